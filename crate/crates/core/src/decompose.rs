//! Interval decomposition of a zigzag module.
//!
//! One left-to-right pass computes the right filtration of every prefix
//! `V[1, k]`. Comparing the subquotient dimensions `r^k` and `r^{k+1}` of
//! consecutive filtrations gives the number `c^k_i` of intervals
//! `[bt_k(i), k]` that end at `k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filtration::{birth_time_index, rf_propagate};
use crate::zigzag::{Arrow, Barcode, Grid, Interval, ZigzagModule, ZigzagType};

/// Tables for one position `k` of the pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub k: usize,
    /// `r^k_1..r^k_k`
    pub dims: Vec<usize>,
    /// `bt(tau[k])`
    pub birth_index: Vec<usize>,
    /// `c^k_1..c^k_k`
    pub multiplicities: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTrace {
    pub steps: Vec<TraceStep>,
}

/// `c^k_i` from the table of subquotient dimensions: `r^k_i - r^{k+1}_i`
/// after a forward arrow `k`, `r^k_i - r^{k+1}_{i+1}` after a backward one,
/// and `r^n_i` at the end. A negative value is reported as an invariant
/// violation.
pub fn multiplicities_from_dims(r: &[Vec<usize>], ty: &ZigzagType) -> Result<Vec<Vec<usize>>> {
    let n = ty.len();
    if r.len() != n || r.iter().enumerate().any(|(k, row)| row.len() != k + 1) {
        return Err(Error::DimensionMismatch(
            "dimension table must have rows of length 1, 2, ..., n".into(),
        ));
    }
    let mut c = Vec::with_capacity(n);
    for k in 0..n {
        if k + 1 == n {
            c.push(r[k].clone());
            continue;
        }
        let shift = usize::from(ty.arrows()[k] == Arrow::Backward);
        let row = (0..=k)
            .map(|i| {
                let later = r[k + 1][i + shift];
                r[k][i].checked_sub(later).ok_or_else(|| {
                    Error::Invariant(format!(
                        "negative multiplicity at k = {}, i = {}: {} - {}",
                        k + 1,
                        i + 1,
                        r[k][i],
                        later
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        c.push(row);
    }
    Ok(c)
}

/// Barcode of `m` together with the tables that produced it.
pub fn decompose(m: &ZigzagModule) -> Result<(Barcode, DecompositionTrace)> {
    let rf = rf_propagate(m)?;
    let r: Vec<Vec<usize>> = rf.reps.iter().map(|rep| rep.dims()).collect();
    let c = multiplicities_from_dims(&r, m.ty())?;
    let mut barcode = Barcode::new(Grid::Integer { len: m.len() });
    let mut steps = Vec::with_capacity(m.len());
    for k in 1..=m.len() {
        let bt = birth_time_index(&m.ty().prefix(k)?);
        for (i, &mult) in c[k - 1].iter().enumerate() {
            barcode.add(
                Interval {
                    birth: bt[i],
                    death: k,
                },
                None,
                mult,
            );
        }
        steps.push(TraceStep {
            k,
            dims: r[k - 1].clone(),
            birth_index: bt,
            multiplicities: c[k - 1].clone(),
        });
    }
    let accounted: usize = barcode.iter().map(|(iv, _, mult)| iv.len() * mult).sum();
    if accounted != m.total_dim() {
        return Err(Error::Invariant(format!(
            "intervals account for {accounted} dimensions, module has {}",
            m.total_dim()
        )));
    }
    Ok((barcode, DecompositionTrace { steps }))
}

/// `Pers(m)` without the trace.
pub fn barcode(m: &ZigzagModule) -> Result<Barcode> {
    decompose(m).map(|(bc, _)| bc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::harness::{plant, random_module_low_rank, random_type, scramble, Rng};
    use crate::matrix::Matrix;
    use crate::zigzag::interval_module;
    use proptest::prelude::*;

    fn ty(s: &str) -> ZigzagType {
        s.parse().unwrap()
    }

    /// `F <- F^2 -> F <- ... -> F` with `N = [1 0]`, `M = [0 1]`.
    fn caution2(n: usize) -> ZigzagModule {
        let f = Field::gf2();
        let t = ty(&"gf".repeat(n));
        let mut dims = vec![1];
        let mut maps = Vec::new();
        for _ in 0..n {
            dims.extend([2, 1]);
            maps.push(Matrix::from_rows(f, &[[1, 0]]).unwrap());
            maps.push(Matrix::from_rows(f, &[[0, 1]]).unwrap());
        }
        ZigzagModule::new(f, t, dims, maps).unwrap()
    }

    #[test]
    fn caution1() {
        let m = caution2(1);
        assert_eq!(barcode(&m).unwrap(), Barcode::from_intervals(3, [(1, 2), (2, 3)]));
    }

    #[test]
    fn caution2_has_only_short_intervals() {
        for n in 2..=4 {
            let m = caution2(n);
            let len = 2 * n + 1;
            let mut expect = vec![(1, 2)];
            expect.extend((1..n).map(|j| (2 * j, 2 * j + 2)));
            expect.push((2 * n, 2 * n + 1));
            let bc = barcode(&m).unwrap();
            assert_eq!(bc, Barcode::from_intervals(len, expect));
            assert_eq!(bc.multiplicity(Interval::new(1, len).unwrap(), None), 0);
        }
    }

    #[test]
    fn identity_persistence_module_is_one_bar() {
        let f = Field::new(7).unwrap();
        for n in 1..6 {
            let m = ZigzagModule::new(f, ZigzagType::forward(n), vec![1; n], vec![Matrix::identity(f, 1); n - 1])
                .unwrap();
            let (bc, trace) = decompose(&m).unwrap();
            assert_eq!(bc, Barcode::from_intervals(n, [(1, n)]));
            for step in &trace.steps[..n - 1] {
                assert!(step.multiplicities.iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn interval_modules_are_indecomposable() {
        let f = Field::new(3).unwrap();
        for len in 1..=6 {
            for bits in 0..1u32 << (len - 1) {
                let arrows = (0..len - 1)
                    .map(|i| if bits >> i & 1 == 1 { Arrow::Backward } else { Arrow::Forward })
                    .collect();
                let t = ZigzagType::new(arrows);
                for b in 1..=len {
                    for d in b..=len {
                        let m = interval_module(f, &t, b, d).unwrap();
                        assert_eq!(barcode(&m).unwrap(), Barcode::from_intervals(len, [(b, d)]), "{t} [{b},{d}]");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_module_has_empty_barcode() {
        let m = ZigzagModule::zero(Field::gf2(), ty("fgfg"));
        assert!(barcode(&m).unwrap().is_empty());
    }

    #[test]
    fn negative_multiplicity_is_an_invariant_violation() {
        let r = vec![vec![1], vec![2, 0]];
        assert!(matches!(multiplicities_from_dims(&r, &ty("f")), Err(Error::Invariant(_))));
        let ok = vec![vec![2], vec![1, 1]];
        assert_eq!(multiplicities_from_dims(&ok, &ty("f")).unwrap(), vec![vec![1], vec![1, 1]]);
        assert!(multiplicities_from_dims(&ok, &ty("ff")).is_err());
    }

    #[test]
    fn all_identity_tables() {
        let n = 4;
        let r: Vec<Vec<usize>> = (1..=n)
            .map(|k| {
                let mut row = vec![0; k];
                row[0] = 3;
                row
            })
            .collect();
        let c = multiplicities_from_dims(&r, &ZigzagType::forward(n)).unwrap();
        for row in &c[..n - 1] {
            assert!(row.iter().all(|&x| x == 0));
        }
        assert_eq!(c[n - 1][0], 3);
    }

    proptest! {
        #[test]
        fn planted_barcodes_are_recovered(seed: u64, len in 1usize..=8, p in prop::sample::select(vec![2u64, 5])) {
            let f = Field::new(p).unwrap();
            let t = random_type(&mut Rng::new(seed ^ 0xA5A5), len);
            let inst = plant(seed, &t, 6, f);
            prop_assert_eq!(barcode(&inst.module).unwrap(), inst.truth);
        }

        #[test]
        fn barcode_respects_sums_and_isomorphism(seed: u64, len in 1usize..=6) {
            let mut rng = Rng::new(seed);
            let f = Field::new(5).unwrap();
            let t = random_type(&mut rng, len);
            let a = random_module_low_rank(&mut rng, f, &t, 3);
            let b = random_module_low_rank(&mut rng, f, &t, 3);
            let mut both = barcode(&a).unwrap();
            both.merge(&barcode(&b).unwrap());
            prop_assert_eq!(barcode(&a.direct_sum(&b).unwrap()).unwrap(), both);
            prop_assert_eq!(barcode(&scramble(&mut rng, &a)).unwrap(), barcode(&a).unwrap());
        }

        #[test]
        fn restriction_and_reversal(seed: u64, len in 1usize..=7) {
            let mut rng = Rng::new(seed);
            let f = Field::gf2();
            let t = random_type(&mut rng, len);
            let m = random_module_low_rank(&mut rng, f, &t, 4);
            let bc = barcode(&m).unwrap();
            for p in 1..=len {
                for q in p..=len {
                    prop_assert_eq!(barcode(&m.restrict(p, q).unwrap()).unwrap(), bc.restrict_window(p, q));
                }
            }
            prop_assert_eq!(barcode(&m.reverse()).unwrap(), bc.reflect());
        }
    }
}
