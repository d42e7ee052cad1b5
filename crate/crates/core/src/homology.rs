//! Simplicial homology over GF(p) and zigzags of complexes.
//!
//! Simplices are sorted vertex lists. The boundary of `[v_0, ..., v_l]` is
//! `sum (-1)^i [v_0, ..., v_i omitted, ..., v_l]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::decompose::barcode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::harness::Rng;
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use crate::zigzag::{Arrow, Barcode, Grid, Interval, ZigzagModule, ZigzagType};

pub type Simplex = Vec<usize>;

/// A finite simplicial complex on the vertex set `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: usize,
    simplices: BTreeSet<Simplex>,
}

fn normalise(vertices: usize, mut s: Simplex) -> Result<Simplex> {
    if s.is_empty() {
        return Err(Error::Complex("empty simplex".into()));
    }
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Complex(format!("simplex {s:?} repeats a vertex")));
    }
    if let Some(&v) = s.last().filter(|&&v| v >= vertices) {
        return Err(Error::Complex(format!(
            "vertex {v} out of range for {vertices} vertices"
        )));
    }
    Ok(s)
}

fn facets(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).filter(move |_| s.len() > 1).map(move |i| {
        let mut f = s.to_vec();
        f.remove(i);
        f
    })
}

impl SimplicialComplex {
    pub fn empty(vertices: usize) -> Self {
        SimplicialComplex {
            vertices,
            simplices: BTreeSet::new(),
        }
    }

    /// The given simplices, which must already be closed under faces.
    pub fn new(vertices: usize, simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let simplices = simplices
            .into_iter()
            .map(|s| normalise(vertices, s))
            .collect::<Result<BTreeSet<_>>>()?;
        for s in &simplices {
            if let Some(missing) = facets(s).find(|f| !simplices.contains(f)) {
                return Err(Error::Complex(format!(
                    "face {missing:?} of {s:?} is missing"
                )));
            }
        }
        Ok(SimplicialComplex { vertices, simplices })
    }

    /// The smallest complex containing the given simplices, and the number
    /// of faces that had to be added.
    pub fn closure(vertices: usize, simplices: impl IntoIterator<Item = Simplex>) -> Result<(Self, usize)> {
        let given = simplices
            .into_iter()
            .map(|s| normalise(vertices, s))
            .collect::<Result<BTreeSet<_>>>()?;
        let mut all = given.clone();
        let mut work: Vec<Simplex> = given.iter().cloned().collect();
        while let Some(s) = work.pop() {
            for f in facets(&s) {
                if all.insert(f.clone()) {
                    work.push(f);
                }
            }
        }
        let added = all.len() - given.len();
        Ok((
            SimplicialComplex {
                vertices,
                simplices: all,
            },
            added,
        ))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Number of simplices of all dimensions.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    /// The `l`-simplices in lexicographic order; this order indexes chains.
    pub fn of_dim(&self, l: usize) -> Vec<Simplex> {
        self.simplices.iter().filter(|s| s.len() == l + 1).cloned().collect()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    fn check_universe(&self, other: &SimplicialComplex) -> Result<()> {
        if self.vertices != other.vertices {
            return Err(Error::Complex(format!(
                "vertex sets differ: {} vs {}",
                self.vertices, other.vertices
            )));
        }
        Ok(())
    }

    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.check_universe(other)?;
        Ok(SimplicialComplex {
            vertices: self.vertices,
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        })
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.check_universe(other)?;
        Ok(SimplicialComplex {
            vertices: self.vertices,
            simplices: self.simplices.intersection(&other.simplices).cloned().collect(),
        })
    }
}

/// Matrix of `∂_l` from `l`-chains to `(l-1)`-chains; `∂_0` has no rows.
pub fn boundary_matrix(c: &SimplicialComplex, l: usize, field: Field) -> Matrix {
    let cols = c.of_dim(l);
    let rows = if l == 0 { Vec::new() } else { c.of_dim(l - 1) };
    let mut m = Matrix::zeros(field, rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (i, face) in facets(s).enumerate() {
            let r = rows.binary_search(&face).expect("complex is closed under faces");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.set(r, j, field.reduce(sign));
        }
    }
    m
}

/// Cycle representatives for `H_l`, completing a basis of the boundaries to
/// a basis of the cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyBasis {
    pub degree: usize,
    /// The `l`-simplices, indexing the rows of `cycles` and `boundaries`.
    pub simplices: Vec<Simplex>,
    /// One column per homology class.
    pub cycles: Matrix,
    /// Independent columns spanning `Im ∂_{l+1}`.
    pub boundaries: Matrix,
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.cycles.cols()
    }
}

pub fn homology_basis(c: &SimplicialComplex, l: usize, field: Field) -> HomologyBasis {
    let simplices = c.of_dim(l);
    let boundaries = Subspace::image_of(&boundary_matrix(c, l + 1, field)).basis().clone();
    let cycles = boundary_matrix(c, l, field).kernel();
    let b = boundaries.cols();
    let joint = boundaries.hstack(&cycles).expect("both live in the l-chains");
    let (_, pivots) = joint.rref();
    let keep: Vec<Vec<u32>> = pivots
        .into_iter()
        .filter(|&p| p >= b)
        .map(|p| joint.column(p))
        .collect();
    HomologyBasis {
        degree: l,
        cycles: Matrix::from_columns(field, simplices.len(), &keep),
        simplices,
        boundaries,
    }
}

/// Matrix of `H_l(src) -> H_l(dst)` induced by the inclusion `src ⊆ dst`.
pub fn induced_map(src: &HomologyBasis, dst: &HomologyBasis) -> Result<Matrix> {
    if src.degree != dst.degree {
        return Err(Error::Complex(format!(
            "degrees {} and {} differ",
            src.degree, dst.degree
        )));
    }
    let field = src.cycles.field();
    let index = src
        .simplices
        .iter()
        .map(|s| {
            dst.simplices
                .binary_search(s)
                .map_err(|_| Error::Complex(format!("simplex {s:?} is not in the target complex")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = dst.simplices.len();
    let embedded: Vec<Vec<u32>> = (0..src.rank())
        .map(|j| {
            let mut v = vec![0; n];
            for (i, &r) in index.iter().enumerate() {
                v[r] = src.cycles.get(i, j);
            }
            v
        })
        .collect();
    let rhs = Matrix::from_columns(field, n, &embedded);
    let system = dst.cycles.hstack(&dst.boundaries)?;
    let coords = system.solve(&rhs).map_err(|e| match e {
        Error::NoSolution => Error::Invariant("image of a cycle is not a cycle".into()),
        other => other,
    })?;
    Ok(coords.slice(0..dst.rank(), 0..src.rank()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZigzagMode {
    /// `X_1 -> X_1 ∪ X_2 <- X_2 -> ...`
    Union,
    /// `X_1 <- X_1 ∩ X_2 -> X_2 <- ...`
    Intersection,
}

impl FromStr for ZigzagMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "union" => Ok(ZigzagMode::Union),
            "intersection" => Ok(ZigzagMode::Intersection),
            other => Err(Error::Parse(format!(
                "mode must be \"union\" or \"intersection\", got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for ZigzagMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZigzagMode::Union => "union",
            ZigzagMode::Intersection => "intersection",
        })
    }
}

/// A sequence of complexes interleaved with the unions or intersections of
/// neighbours, `2n - 1` complexes in all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialZigzag {
    mode: ZigzagMode,
    slots: Vec<SimplicialComplex>,
}

impl SimplicialZigzag {
    pub fn new(complexes: &[SimplicialComplex], mode: ZigzagMode) -> Result<Self> {
        let Some(first) = complexes.first() else {
            return Err(Error::Complex("no complexes given".into()));
        };
        let mut slots = vec![first.clone()];
        for pair in complexes.windows(2) {
            let between = match mode {
                ZigzagMode::Union => pair[0].union(&pair[1])?,
                ZigzagMode::Intersection => pair[0].intersection(&pair[1])?,
            };
            slots.push(between);
            slots.push(pair[1].clone());
        }
        Ok(SimplicialZigzag { mode, slots })
    }

    pub fn mode(&self) -> ZigzagMode {
        self.mode
    }

    /// Number of original complexes.
    pub fn complexes(&self) -> usize {
        self.slots.len().div_ceil(2)
    }

    pub fn slots(&self) -> &[SimplicialComplex] {
        &self.slots
    }

    pub fn grid(&self) -> Grid {
        Grid::HalfInteger {
            complexes: self.complexes(),
        }
    }

    /// `(fg)^{n-1}` for unions, `(gf)^{n-1}` for intersections.
    pub fn ty(&self) -> ZigzagType {
        let pair = match self.mode {
            ZigzagMode::Union => [Arrow::Forward, Arrow::Backward],
            ZigzagMode::Intersection => [Arrow::Backward, Arrow::Forward],
        };
        ZigzagType::new(pair.iter().copied().cycle().take(self.slots.len() - 1).collect())
    }

    /// `H_l` of the whole zigzag as a zigzag module.
    pub fn build_zigzag(&self, l: usize, field: Field) -> Result<ZigzagModule> {
        let bases: Vec<HomologyBasis> = self.slots.iter().map(|c| homology_basis(c, l, field)).collect();
        let ty = self.ty();
        let maps = ty
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| match a {
                Arrow::Forward => induced_map(&bases[i], &bases[i + 1]),
                Arrow::Backward => induced_map(&bases[i + 1], &bases[i]),
            })
            .collect::<Result<Vec<_>>>()?;
        let dims = bases.iter().map(HomologyBasis::rank).collect();
        ZigzagModule::new(field, ty, dims, maps)
    }

    /// Barcodes of `H_l` for every `l` in `degrees`, tagged by degree and
    /// labelled on the half-integer grid.
    pub fn barcodes(&self, degrees: std::ops::RangeInclusive<usize>, field: Field) -> Result<Barcode> {
        let mut out = Barcode::new(self.grid());
        for l in degrees {
            out.merge(&barcode(&self.build_zigzag(l, field)?)?.with_degree(l));
        }
        Ok(out)
    }
}

/// Outcome of the Mayer–Vietoris check for one pair `(A, B)` and degree `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvReport {
    /// `Im D_1 = Ker D_2` in degree `l`.
    pub exact: bool,
    /// `dim Coker D_2` in degree `l + 1`.
    pub coker_d2_above: usize,
    /// `dim Ker D_1` in degree `l`.
    pub ker_d1: usize,
}

impl MvReport {
    pub fn ok(&self) -> bool {
        self.exact && self.coker_d2_above == self.ker_d1
    }
}

/// `D_1 : H(A ∩ B) -> H(A) + H(B)` and `D_2 : H(A) + H(B) -> H(A ∪ B)`.
fn mv_maps(a: &SimplicialComplex, b: &SimplicialComplex, l: usize, field: Field) -> Result<(Matrix, Matrix)> {
    let cap = homology_basis(&a.intersection(b)?, l, field);
    let cup = homology_basis(&a.union(b)?, l, field);
    let ha = homology_basis(a, l, field);
    let hb = homology_basis(b, l, field);
    let d1 = induced_map(&cap, &ha)?.vstack(&induced_map(&cap, &hb)?)?;
    let d2 = induced_map(&ha, &cup)?.hstack(&induced_map(&hb, &cup)?.neg())?;
    Ok((d1, d2))
}

pub fn mv_check(a: &SimplicialComplex, b: &SimplicialComplex, l: usize, field: Field) -> Result<MvReport> {
    let (d1, d2) = mv_maps(a, b, l, field)?;
    let (_, d2_above) = mv_maps(a, b, l + 1, field)?;
    Ok(MvReport {
        exact: Subspace::image_of(&d1) == Subspace::kernel_of(&d2),
        coker_d2_above: d2_above.rows() - d2_above.rank(),
        ker_d1: d1.cols() - d1.rank(),
    })
}

/// Relabel a union-zigzag interval to its intersection-zigzag partner:
/// births swap `2k <-> 2k+1`, deaths swap `2k-1 <-> 2k`.
pub fn union_to_intersection(iv: Interval, len: usize) -> Interval {
    let birth = match iv.birth {
        1 => 1,
        b if b % 2 == 0 => b + 1,
        b => b - 1,
    };
    let death = match iv.death {
        d if d == len => d,
        d if d % 2 == 0 => d - 1,
        d => d + 1,
    };
    Interval { birth, death }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongDiamondReport {
    /// Union-zigzag barcodes for degrees `0..=l_max + 1`.
    pub union: Barcode,
    /// Intersection-zigzag barcodes for degrees `0..=l_max + 1`.
    pub intersection: Barcode,
    pub violations: Vec<String>,
}

impl StrongDiamondReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compare the union and intersection zigzags of `complexes` in degrees
/// `0..=l_max`:
///
/// * restricted to the original complexes the barcodes agree;
/// * `[j, j]` at a between-slot `j` in degree `l` of the intersection
///   zigzag matches `[j, j]` in degree `l + 1` of the union zigzag (and the
///   union zigzag has none in degree 0);
/// * every other union interval, with births `2k <-> 2k+1` and deaths
///   `2k-1 <-> 2k` swapped, is an intersection interval of the same degree.
pub fn verify_strong_diamond(complexes: &[SimplicialComplex], l_max: usize, field: Field) -> Result<StrongDiamondReport> {
    if complexes.len() < 2 {
        return Err(Error::Complex("need at least two complexes".into()));
    }
    let cup_z = SimplicialZigzag::new(complexes, ZigzagMode::Union)?;
    let cap_z = SimplicialZigzag::new(complexes, ZigzagMode::Intersection)?;
    let union = cup_z.barcodes(0..=l_max + 1, field)?;
    let intersection = cap_z.barcodes(0..=l_max + 1, field)?;
    let grid = cup_z.grid();
    let len = grid.len();
    let odd: BTreeSet<usize> = (1..=len).step_by(2).collect();
    let half = |iv: Interval| iv.birth == iv.death && grid.is_half_slot(iv.birth);
    let mut violations = Vec::new();
    for l in 0..=l_max {
        let cup = union.degree(l);
        let cap = intersection.degree(l);
        if cup.restrict(&odd) != cap.restrict(&odd) {
            violations.push(format!(
                "H{l}: restrictions to the original complexes differ: {} vs {}",
                cup.restrict(&odd),
                cap.restrict(&odd)
            ));
        }
        let cup_above = union.degree(l + 1);
        for j in (2..len).step_by(2) {
            let s = Interval { birth: j, death: j };
            let (below, above) = (cap.multiplicity(s, None), cup_above.multiplicity(s, None));
            if below != above {
                violations.push(format!(
                    "[{0}, {0}]: {below} in H{l} of the intersection zigzag, {above} in H{1} of the union zigzag",
                    grid.label(j),
                    l + 1
                ));
            }
            if l == 0 && cup.multiplicity(s, None) != 0 {
                violations.push(format!("[{0}, {0}] appears in H0 of the union zigzag", grid.label(j)));
            }
        }
        let moved = cup
            .filter(|iv, _| !half(iv))
            .map_intervals(grid, |iv| Some(union_to_intersection(iv, len)));
        let rest = cap.filter(|iv, _| !half(iv));
        if moved != rest {
            violations.push(format!(
                "H{l}: relabelled union intervals {moved} differ from intersection intervals {rest}"
            ));
        }
    }
    Ok(StrongDiamondReport {
        union,
        intersection,
        violations,
    })
}

/// A random complex on `vertices` vertices of dimension at most `max_dim`:
/// each vertex is present with probability 9/10, and a higher simplex whose
/// facets are all present is added with a probability that decreases with
/// its dimension.
pub fn random_complex(rng: &mut Rng, vertices: usize, max_dim: usize) -> SimplicialComplex {
    let mut by_size: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    let verts: Vec<Simplex> = (0..vertices).filter(|_| rng.chance(9, 10)).map(|v| vec![v]).collect();
    by_size.insert(1, verts);
    let mut all: BTreeSet<Simplex> = by_size[&1].iter().cloned().collect();
    for size in 2..=max_dim + 1 {
        let (num, den) = match size {
            2 => (1, 2),
            3 => (2, 5),
            _ => (1, 3),
        };
        let mut next = Vec::new();
        for s in &by_size[&(size - 1)] {
            let last = *s.last().expect("simplices are non-empty");
            for v in last + 1..vertices {
                let mut t = s.clone();
                t.push(v);
                if facets(&t).all(|f| all.contains(&f)) && rng.chance(num, den) {
                    next.push(t);
                }
            }
        }
        all.extend(next.iter().cloned());
        by_size.insert(size, next);
    }
    SimplicialComplex {
        vertices,
        simplices: all,
    }
}

/// A perturbation of `c`: some maximal simplices removed and some new
/// simplices (with all facets present) added.
pub fn perturb_complex(rng: &mut Rng, c: &SimplicialComplex, max_dim: usize) -> SimplicialComplex {
    let mut s = c.simplices.clone();
    let maximal: Vec<Simplex> = c
        .simplices
        .iter()
        .filter(|x| !c.simplices.iter().any(|y| y.len() == x.len() + 1 && x.iter().all(|v| y.contains(v))))
        .cloned()
        .collect();
    for m in maximal {
        if rng.chance(1, 4) {
            s.remove(&m);
        }
    }
    for size in 1..=max_dim + 1 {
        let candidates: Vec<Simplex> = if size == 1 {
            (0..c.vertices).map(|v| vec![v]).filter(|v| !s.contains(v)).collect()
        } else {
            s.iter()
                .filter(|x| x.len() == size - 1)
                .flat_map(|x| {
                    let last = *x.last().expect("simplices are non-empty");
                    (last + 1..c.vertices).map(move |v| {
                        let mut t = x.clone();
                        t.push(v);
                        t
                    })
                })
                .filter(|t| !s.contains(t) && facets(t).all(|f| s.contains(&f)))
                .collect()
        };
        for t in candidates {
            if rng.chance(1, 4) {
                s.insert(t);
            }
        }
    }
    SimplicialComplex {
        vertices: c.vertices,
        simplices: s,
    }
}

/// A sequence of `n` complexes, each a perturbation of the previous one.
pub fn random_sequence(rng: &mut Rng, n: usize, vertices: usize, max_dim: usize) -> Vec<SimplicialComplex> {
    let mut out = vec![random_complex(rng, vertices, max_dim)];
    while out.len() < n {
        let next = if rng.chance(1, 5) {
            random_complex(rng, vertices, max_dim)
        } else {
            perturb_complex(rng, out.last().expect("sequence is non-empty"), max_dim)
        };
        out.push(next);
    }
    out
}
