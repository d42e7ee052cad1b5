//! Zigzag types, zigzag modules, intervals and barcodes.
//!
//! Index conventions: positions in a zigzag (spaces, interval endpoints,
//! restriction windows) are 1-based, as in `I(b, d)` with `1 <= b <= d <= n`.
//! Slices returned by accessors such as [`ZigzagModule::dims`] and
//! [`ZigzagModule::maps`] are ordinary 0-based Rust slices, so arrow `i`
//! (between `V_i` and `V_{i+1}`) is `maps()[i - 1]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Direction of one arrow of a zigzag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    /// `f_i : V_i -> V_{i+1}`
    Forward,
    /// `g_i : V_i <- V_{i+1}`
    Backward,
}

impl Arrow {
    pub fn flip(self) -> Arrow {
        match self {
            Arrow::Forward => Arrow::Backward,
            Arrow::Backward => Arrow::Forward,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Arrow::Forward => 'f',
            Arrow::Backward => 'g',
        }
    }

    pub fn from_symbol(c: char) -> Result<Arrow> {
        match c {
            'f' | 'F' => Ok(Arrow::Forward),
            'g' | 'G' => Ok(Arrow::Backward),
            other => Err(Error::Parse(format!("unknown arrow symbol {other:?}"))),
        }
    }
}

/// The type of a zigzag: the sequence of arrow directions. A type with
/// `n - 1` arrows has length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZigzagType {
    arrows: Vec<Arrow>,
}

impl ZigzagType {
    pub fn new(arrows: Vec<Arrow>) -> Self {
        ZigzagType { arrows }
    }

    /// `f^{n-1}`: an ordinary persistence module of length `n`.
    pub fn forward(n: usize) -> Self {
        ZigzagType::new(vec![Arrow::Forward; n.saturating_sub(1)])
    }

    /// Number of spaces.
    pub fn len(&self) -> usize {
        self.arrows.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Arrow `i` (1-based), between positions `i` and `i + 1`.
    pub fn arrow(&self, i: usize) -> Arrow {
        self.arrows[i - 1]
    }

    /// Type of the window `[p, q]` (1-based, inclusive).
    pub fn window(&self, p: usize, q: usize) -> Result<ZigzagType> {
        check_window(p, q, self.len())?;
        Ok(ZigzagType::new(self.arrows[p - 1..q - 1].to_vec()))
    }

    /// `tau[k]`, the truncation to the first `k` positions.
    pub fn prefix(&self, k: usize) -> Result<ZigzagType> {
        self.window(1, k)
    }

    /// The type of the reversed zigzag: arrow `i` of the result is arrow
    /// `n - i` of `self`, flipped.
    pub fn reversed(&self) -> ZigzagType {
        ZigzagType::new(self.arrows.iter().rev().map(|a| a.flip()).collect())
    }

    pub fn push(&mut self, arrow: Arrow) {
        self.arrows.push(arrow);
    }
}

impl FromStr for ZigzagType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(Arrow::from_symbol)
            .collect::<Result<Vec<_>>>()
            .map(ZigzagType::new)
    }
}

impl fmt::Display for ZigzagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.arrows {
            write!(f, "{}", a.symbol())?;
        }
        Ok(())
    }
}

fn check_window(p: usize, q: usize, n: usize) -> Result<()> {
    if p < 1 || p > q || q > n {
        return Err(Error::OutOfRange(format!(
            "window [{p}, {q}] is not inside [1, {n}]"
        )));
    }
    Ok(())
}

/// A zigzag module over a prime field: spaces `V_i = F^{a_i}` and one matrix
/// per arrow. A forward arrow carries `M_i` of shape `a_{i+1} x a_i`; a
/// backward arrow carries `N_i` of shape `a_i x a_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagModule {
    field: Field,
    ty: ZigzagType,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl ZigzagModule {
    /// Checked constructor; see [`validate`].
    pub fn new(field: Field, ty: ZigzagType, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        validate(field, &ty, &dims, &maps)?;
        Ok(ZigzagModule {
            field,
            ty,
            dims,
            maps,
        })
    }

    /// The module with every space zero.
    pub fn zero(field: Field, ty: ZigzagType) -> Self {
        let n = ty.len();
        let maps = vec![Matrix::zeros(field, 0, 0); n - 1];
        ZigzagModule {
            field,
            ty,
            dims: vec![0; n],
            maps,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ty(&self) -> &ZigzagType {
        &self.ty
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of `V_i` (1-based).
    pub fn dim(&self, i: usize) -> usize {
        self.dims[i - 1]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Matrix of arrow `i` (1-based).
    pub fn map(&self, i: usize) -> &Matrix {
        &self.maps[i - 1]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn into_parts(self) -> (Field, ZigzagType, Vec<usize>, Vec<Matrix>) {
        (self.field, self.ty, self.dims, self.maps)
    }

    /// Restriction `V[p, q]` to the positions `p..=q` (1-based).
    pub fn restrict(&self, p: usize, q: usize) -> Result<ZigzagModule> {
        check_window(p, q, self.len())?;
        Ok(ZigzagModule {
            field: self.field,
            ty: self.ty.window(p, q)?,
            dims: self.dims[p - 1..q].to_vec(),
            maps: self.maps[p - 1..q - 1].to_vec(),
        })
    }

    /// The reversed module: position `i` becomes `n + 1 - i`, every arrow
    /// flips direction and keeps its matrix.
    pub fn reverse(&self) -> ZigzagModule {
        ZigzagModule {
            field: self.field,
            ty: self.ty.reversed(),
            dims: self.dims.iter().rev().copied().collect(),
            maps: self.maps.iter().rev().cloned().collect(),
        }
    }

    /// External direct sum: dimensions add and maps are block diagonal.
    pub fn direct_sum(&self, other: &ZigzagModule) -> Result<ZigzagModule> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.ty != other.ty {
            return Err(Error::TypeMismatch(format!(
                "direct sum of types {:?} and {:?}",
                self.ty.to_string(),
                other.ty.to_string()
            )));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect::<Result<Vec<_>>>()?;
        ZigzagModule::new(self.field, self.ty.clone(), dims, maps)
    }

    /// Conjugate every map by a change of basis. `bases[i]` is an invertible
    /// `a_{i+1} x a_{i+1}` matrix whose columns are the new basis of
    /// `V_{i+1}` written in the old coordinates.
    pub fn change_basis(&self, bases: &[Matrix]) -> Result<ZigzagModule> {
        if bases.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} basis matrices for a module of length {}",
                bases.len(),
                self.len()
            )));
        }
        for (i, b) in bases.iter().enumerate() {
            if b.shape() != (self.dims[i], self.dims[i]) {
                return Err(Error::DimensionMismatch(format!(
                    "basis for position {} has shape {:?}, expected {}x{}",
                    i + 1,
                    b.shape(),
                    self.dims[i],
                    self.dims[i]
                )));
            }
        }
        let inverses = bases.iter().map(Matrix::inverse).collect::<Result<Vec<_>>>()?;
        let maps = self
            .ty
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, arrow)| match arrow {
                Arrow::Forward => inverses[i + 1].mul(&self.maps[i])?.mul(&bases[i]),
                Arrow::Backward => inverses[i].mul(&self.maps[i])?.mul(&bases[i + 1]),
            })
            .collect::<Result<Vec<_>>>()?;
        ZigzagModule::new(self.field, self.ty.clone(), self.dims.clone(), maps)
    }
}

/// Check that matrix shapes agree with the dimension vector and the arrow
/// directions. Zero-dimensional spaces are allowed.
pub fn validate(field: Field, ty: &ZigzagType, dims: &[usize], maps: &[Matrix]) -> Result<()> {
    if dims.len() != ty.len() {
        return Err(Error::DimensionMismatch(format!(
            "type {:?} has length {} but {} dimensions were given",
            ty.to_string(),
            ty.len(),
            dims.len()
        )));
    }
    if maps.len() != ty.arrows().len() {
        return Err(Error::DimensionMismatch(format!(
            "type {:?} has {} arrows but {} maps were given",
            ty.to_string(),
            ty.arrows().len(),
            maps.len()
        )));
    }
    for (i, (arrow, m)) in ty.arrows().iter().zip(maps).enumerate() {
        if m.field() != field {
            return Err(Error::FieldMismatch(field.p(), m.field().p()));
        }
        let (er, ec) = match arrow {
            Arrow::Forward => (dims[i + 1], dims[i]),
            Arrow::Backward => (dims[i], dims[i + 1]),
        };
        if m.shape() != (er, ec) {
            return Err(Error::MapShape {
                arrow: i + 1,
                expected_rows: er,
                expected_cols: ec,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    Ok(())
}

/// The interval module `I(b, d)`: a copy of the field on positions `b..=d`,
/// identity maps between adjacent copies and zero elsewhere.
pub fn interval_module(field: Field, ty: &ZigzagType, b: usize, d: usize) -> Result<ZigzagModule> {
    check_window(b, d, ty.len())?;
    let dims: Vec<usize> = (1..=ty.len()).map(|i| usize::from(b <= i && i <= d)).collect();
    let maps = ty
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, arrow)| {
            let (src, dst) = match arrow {
                Arrow::Forward => (dims[i], dims[i + 1]),
                Arrow::Backward => (dims[i + 1], dims[i]),
            };
            if src == 1 && dst == 1 {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, dst, src)
            }
        })
        .collect();
    ZigzagModule::new(field, ty.clone(), dims, maps)
}

/// A closed integer interval `[birth, death]` of positions (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub birth: usize,
    pub death: usize,
}

impl Interval {
    pub fn new(birth: usize, death: usize) -> Result<Self> {
        if birth < 1 || birth > death {
            return Err(Error::OutOfRange(format!("[{birth}, {death}] is not an interval")));
        }
        Ok(Interval { birth, death })
    }

    pub fn contains(&self, k: usize) -> bool {
        self.birth <= k && k <= self.death
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.birth <= other.birth && other.death <= self.death
    }

    pub fn len(&self) -> usize {
        self.death - self.birth + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.birth, self.death)
    }
}

/// How positions `1..=len` are labelled for presentation.
///
/// Union/intersection zigzags of `n` complexes have `2n - 1` positions; the
/// odd ones are the complexes themselves (`"1"`, `"2"`, ...) and the even
/// ones sit between them (`"1.5"`, `"2.5"`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grid {
    Integer { len: usize },
    HalfInteger { complexes: usize },
}

impl Grid {
    pub fn len(&self) -> usize {
        match *self {
            Grid::Integer { len } => len,
            Grid::HalfInteger { complexes } => (2 * complexes).saturating_sub(1),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, i: usize) -> String {
        match self {
            Grid::Integer { .. } => i.to_string(),
            Grid::HalfInteger { .. } if i % 2 == 1 => i.div_ceil(2).to_string(),
            Grid::HalfInteger { .. } => format!("{}.5", i / 2),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (1..=self.len()).map(|i| self.label(i)).collect()
    }

    /// Inverse of [`Grid::label`].
    pub fn position(&self, label: &str) -> Result<usize> {
        let pos = match self {
            Grid::Integer { .. } => label.parse::<usize>().ok(),
            Grid::HalfInteger { .. } => match label.strip_suffix(".5") {
                Some(whole) => whole.parse::<usize>().ok().map(|k| 2 * k),
                None => label.parse::<usize>().ok().map(|k| (2 * k).wrapping_sub(1)),
            },
        };
        match pos {
            Some(p) if (1..=self.len()).contains(&p) => Ok(p),
            _ => Err(Error::Parse(format!("{label:?} is not a position of this grid"))),
        }
    }

    /// Whether position `i` is one of the between-slots of a half-integer grid.
    pub fn is_half_slot(&self, i: usize) -> bool {
        matches!(self, Grid::HalfInteger { .. }) && i.is_multiple_of(2)
    }
}

/// Key of a barcode entry: the interval and an optional homological degree.
pub type BarKey = (Interval, Option<usize>);

/// A multiset of intervals, each optionally tagged with a homological degree.
///
/// Entries are kept in canonical order: birth ascending, then death, then
/// degree (untagged first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barcode {
    grid: Grid,
    entries: BTreeMap<BarKey, usize>,
}

impl Barcode {
    pub fn new(grid: Grid) -> Self {
        Barcode {
            grid,
            entries: BTreeMap::new(),
        }
    }

    /// Untagged barcode on an integer grid of length `len`.
    pub fn from_intervals(len: usize, intervals: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut bc = Barcode::new(Grid::Integer { len });
        for (b, d) in intervals {
            bc.add(Interval { birth: b, death: d }, None, 1);
        }
        bc
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn with_grid(mut self, grid: Grid) -> Self {
        self.grid = grid;
        self
    }

    /// Tag every entry with homological degree `dim`.
    pub fn with_degree(self, dim: usize) -> Self {
        let mut out = Barcode::new(self.grid);
        for ((iv, _), m) in self.entries {
            out.add(iv, Some(dim), m);
        }
        out
    }

    /// Add `mult` copies; zero multiplicities are ignored.
    pub fn add(&mut self, interval: Interval, degree: Option<usize>, mult: usize) {
        if mult > 0 {
            *self.entries.entry((interval, degree)).or_insert(0) += mult;
        }
    }

    /// Multiset union (keeps `self`'s grid).
    pub fn merge(&mut self, other: &Barcode) {
        for (&(iv, dim), &m) in &other.entries {
            self.add(iv, dim, m);
        }
    }

    pub fn multiplicity(&self, interval: Interval, degree: Option<usize>) -> usize {
        self.entries.get(&(interval, degree)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Interval, Option<usize>, usize)> + '_ {
        self.entries.iter().map(|(&(iv, d), &m)| (iv, d, m))
    }

    /// Number of distinct entries.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries of degree `dim`, with the tag stripped.
    pub fn degree(&self, dim: usize) -> Barcode {
        let mut out = Barcode::new(self.grid);
        for (iv, d, m) in self.iter() {
            if d == Some(dim) {
                out.add(iv, None, m);
            }
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(Interval, Option<usize>) -> bool) -> Barcode {
        let mut out = Barcode::new(self.grid);
        for (iv, d, m) in self.iter() {
            if keep(iv, d) {
                out.add(iv, d, m);
            }
        }
        out
    }

    /// Relabel every interval with `f`; entries mapped to `None` are dropped
    /// and colliding images merge.
    pub fn map_intervals(&self, grid: Grid, mut f: impl FnMut(Interval) -> Option<Interval>) -> Barcode {
        let mut out = Barcode::new(grid);
        for (iv, d, m) in self.iter() {
            if let Some(image) = f(iv) {
                out.add(image, d, m);
            }
        }
        out
    }

    /// Restriction to an index set `K`: each interval `I` becomes `I ∩ K`,
    /// written as `[min, max]` of the positions it keeps; intervals missing
    /// `K` entirely are dropped.
    pub fn restrict(&self, k: &BTreeSet<usize>) -> Barcode {
        self.map_intervals(self.grid, |iv| {
            let mut kept = k.range(iv.birth..=iv.death);
            let lo = *kept.next()?;
            let hi = kept.next_back().copied().unwrap_or(lo);
            Some(Interval { birth: lo, death: hi })
        })
    }

    /// Restriction to the window `[p, q]`, re-indexed so that `p` becomes 1.
    /// This is the barcode that the restricted module `V[p, q]` should have.
    pub fn restrict_window(&self, p: usize, q: usize) -> Barcode {
        let len = q + 1 - p;
        self.map_intervals(Grid::Integer { len }, |iv| {
            let lo = iv.birth.max(p);
            let hi = iv.death.min(q);
            (lo <= hi).then(|| Interval {
                birth: lo + 1 - p,
                death: hi + 1 - p,
            })
        })
    }

    /// Mirror image under `i -> n + 1 - i`, the barcode of the reversed module.
    pub fn reflect(&self) -> Barcode {
        let n = self.grid.len();
        self.map_intervals(self.grid, |iv| {
            Some(Interval {
                birth: n + 1 - iv.death,
                death: n + 1 - iv.birth,
            })
        })
    }

    pub fn degrees(&self) -> BTreeSet<Option<usize>> {
        self.entries.keys().map(|(_, d)| *d).collect()
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (iv, d, m) in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "[{}, {}]", self.grid.label(iv.birth), self.grid.label(iv.death))?;
            if let Some(d) = d {
                write!(f, "_H{d}")?;
            }
            if m > 1 {
                write!(f, " x{m}")?;
            }
        }
        write!(f, "}}")
    }
}
