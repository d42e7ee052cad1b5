//! Two zigzag modules that differ only in a middle diamond, and the
//! matching between their barcodes when the diamond is exact.
//!
//! `V+` passes through `W` at position `k` (`V_{k-1} -> W <- V_{k+1}`) and
//! `V-` through `U` (`V_{k-1} <- U -> V_{k+1}`); everything else is shared.

use std::collections::BTreeSet;

use crate::decompose::barcode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::harness::{random_invertible, random_module_low_rank, random_type, Rng};
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use crate::zigzag::{Arrow, Barcode, Interval, ZigzagModule, ZigzagType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondInstance {
    k: usize,
    plus: ZigzagModule,
    minus: ZigzagModule,
}

impl DiamondInstance {
    /// Pair up `V+` and `V-`; they must agree away from position `k`, with
    /// `V+` of shape `-> W <-` and `V-` of shape `<- U ->` at `k`.
    pub fn from_modules(plus: ZigzagModule, minus: ZigzagModule, k: usize) -> Result<Self> {
        let n = plus.len();
        if minus.len() != n {
            return Err(Error::TypeMismatch(format!(
                "V+ has length {n}, V- has length {}",
                minus.len()
            )));
        }
        if k < 2 || k + 1 > n {
            return Err(Error::OutOfRange(format!(
                "diamond position k = {k} needs neighbours on both sides (2 <= k <= {})",
                n.saturating_sub(1)
            )));
        }
        if plus.field() != minus.field() {
            return Err(Error::FieldMismatch(plus.field().p(), minus.field().p()));
        }
        let expect = |m: &ZigzagModule, a: Arrow, b: Arrow, name: &str| {
            if m.ty().arrow(k - 1) != a || m.ty().arrow(k) != b {
                return Err(Error::TypeMismatch(format!(
                    "{name} has arrows {}{} around position {k}, expected {}{}",
                    m.ty().arrow(k - 1).symbol(),
                    m.ty().arrow(k).symbol(),
                    a.symbol(),
                    b.symbol()
                )));
            }
            Ok(())
        };
        expect(&plus, Arrow::Forward, Arrow::Backward, "V+")?;
        expect(&minus, Arrow::Backward, Arrow::Forward, "V-")?;
        for i in (1..=n).filter(|&i| i != k) {
            if plus.dim(i) != minus.dim(i) {
                return Err(Error::DimensionMismatch(format!(
                    "V+ and V- differ in dimension at position {i}"
                )));
            }
        }
        for i in (1..n).filter(|&i| i + 1 != k && i != k) {
            if plus.ty().arrow(i) != minus.ty().arrow(i) || plus.map(i) != minus.map(i) {
                return Err(Error::TypeMismatch(format!(
                    "V+ and V- differ at arrow {i}, away from the diamond"
                )));
            }
        }
        Ok(DiamondInstance { k, plus, minus })
    }

    /// Build `V+` from `V-` by replacing `U` with a space `W` of dimension
    /// `w` and the maps `f_{k-1} : V_{k-1} -> W`, `g_k : V_{k+1} -> W`.
    pub fn from_minus(minus: ZigzagModule, k: usize, f_km1: Matrix, g_k: Matrix) -> Result<Self> {
        if k < 2 || k + 1 > minus.len() {
            return Err(Error::OutOfRange(format!("diamond position k = {k}")));
        }
        let (field, ty, mut dims, mut maps) = minus.clone().into_parts();
        let mut arrows = ty.arrows().to_vec();
        arrows[k - 2] = Arrow::Forward;
        arrows[k - 1] = Arrow::Backward;
        dims[k - 1] = f_km1.rows();
        maps[k - 2] = f_km1;
        maps[k - 1] = g_k;
        let plus = ZigzagModule::new(field, ZigzagType::new(arrows), dims, maps)?;
        DiamondInstance::from_modules(plus, minus, k)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn plus(&self) -> &ZigzagModule {
        &self.plus
    }

    pub fn minus(&self) -> &ZigzagModule {
        &self.minus
    }

    /// `D_1(u) = g_{k-1}(u) + f_k(u)` as a map `U -> V_{k-1} + V_{k+1}`.
    pub fn d1(&self) -> Matrix {
        self.minus
            .map(self.k - 1)
            .vstack(self.minus.map(self.k))
            .expect("both maps leave U")
    }

    /// `D_2(v + v') = f_{k-1}(v) - g_k(v')` as a map `V_{k-1} + V_{k+1} -> W`.
    pub fn d2(&self) -> Matrix {
        self.plus
            .map(self.k - 1)
            .hstack(&self.plus.map(self.k).neg())
            .expect("both maps land in W")
    }

    /// Whether `Im D_1 = Ker D_2`.
    pub fn check_exact(&self) -> bool {
        Subspace::image_of(&self.d1()) == Subspace::kernel_of(&self.d2())
    }
}

/// The partner of a non-`[k, k]` interval under the matching at `k`.
/// Returns `None` for `[k, k]`, which is unmatched.
pub fn diamond_partner(iv: Interval, k: usize) -> Option<Interval> {
    let Interval { birth: b, death: d } = iv;
    if b == k && d == k {
        return None;
    }
    let out = if d == k && b < k {
        Interval { birth: b, death: k - 1 }
    } else if d + 1 == k {
        Interval { birth: b, death: k }
    } else if b == k && d > k {
        Interval { birth: k + 1, death: d }
    } else if b == k + 1 {
        Interval { birth: k, death: d }
    } else {
        iv
    };
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondReport {
    pub k: usize,
    pub exact: bool,
    pub plus: Barcode,
    pub minus: Barcode,
    /// Multiplicity of `[k, k]` on each side; no relation is asserted.
    pub singletons_plus: usize,
    pub singletons_minus: usize,
    pub violations: Vec<String>,
}

impl DiamondReport {
    pub fn ok(&self) -> bool {
        self.exact && self.violations.is_empty()
    }
}

/// Decompose both sides and check that multiplicities agree under
/// [`diamond_partner`] and that the restrictions to `{1..n} \ {k}` agree.
pub fn verify_diamond_matching(d: &DiamondInstance) -> Result<DiamondReport> {
    let k = d.k;
    let n = d.plus.len();
    let exact = d.check_exact();
    let plus = barcode(&d.plus)?;
    let minus = barcode(&d.minus)?;
    let mut violations = Vec::new();
    if !exact {
        violations.push(format!("diamond at {k} is not exact"));
    }
    let candidates: BTreeSet<Interval> = plus
        .iter()
        .map(|(iv, _, _)| iv)
        .chain(minus.iter().filter_map(|(iv, _, _)| diamond_partner(iv, k)))
        .collect();
    for iv in candidates {
        let Some(partner) = diamond_partner(iv, k) else {
            continue;
        };
        let (mp, mm) = (plus.multiplicity(iv, None), minus.multiplicity(partner, None));
        if mp != mm {
            violations.push(format!(
                "{iv} has multiplicity {mp} in V+ but its partner {partner} has {mm} in V-"
            ));
        }
    }
    let keep: BTreeSet<usize> = (1..=n).filter(|&i| i != k).collect();
    if plus.restrict(&keep) != minus.restrict(&keep) {
        violations.push(format!(
            "restrictions away from {k} differ: {} vs {}",
            plus.restrict(&keep),
            minus.restrict(&keep)
        ));
    }
    let kk = Interval { birth: k, death: k };
    Ok(DiamondReport {
        k,
        exact,
        singletons_plus: plus.multiplicity(kk, None),
        singletons_minus: minus.multiplicity(kk, None),
        plus,
        minus,
        violations,
    })
}

/// Complete `V-` to an exact diamond: `W = (V_{k-1} + V_{k+1}) / Im D_1`
/// with the induced maps, followed by `extra_w` further dimensions of `W`
/// that no map reaches and a random change of basis of `W`.
pub fn pushout(rng: &mut Rng, minus: &ZigzagModule, k: usize, extra_w: usize) -> Result<DiamondInstance> {
    let field = minus.field();
    let g = minus.map(k - 1);
    let f = minus.map(k);
    let d1 = g.vstack(f)?;
    // rows of q span the annihilator of Im D_1, so Ker q = Im D_1
    let q = d1.transpose().kernel().transpose();
    let q = q.vstack(&Matrix::zeros(field, extra_w, q.cols()))?;
    let w = q.rows();
    let q = random_invertible(rng, w, field).mul(&q)?;
    let a = minus.dim(k - 1);
    let f_km1 = q.slice(0..w, 0..a);
    let g_k = q.slice(0..w, a..q.cols()).neg();
    DiamondInstance::from_minus(minus.clone(), k, f_km1, g_k)
}

/// A random exact diamond of length `n` at position `k`, from a random
/// `V-` with dimensions up to `max_dim`.
pub fn random_exact_diamond(rng: &mut Rng, field: Field, n: usize, k: usize, max_dim: usize) -> Result<DiamondInstance> {
    let mut arrows = random_type(rng, n).arrows().to_vec();
    arrows[k - 2] = Arrow::Backward;
    arrows[k - 1] = Arrow::Forward;
    let ty = ZigzagType::new(arrows);
    let minus = random_module_low_rank(rng, field, &ty, max_dim);
    let extra = rng.below(2);
    pushout(rng, &minus, k, extra)
}
