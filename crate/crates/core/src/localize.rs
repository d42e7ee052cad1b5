//! Intervals through a single index `k`, read off from how the right and
//! left filtrations of `V_k` meet.
//!
//! Everything here works with explicit subspaces; no basis of the module is
//! changed, so the results are independent of [`crate::decompose`].

use crate::error::{Error, Result};
use crate::filtration::{birth_time_index, death_time_index, rf_abstract};
use crate::subspace::Subspace;
use crate::zigzag::{Barcode, Grid, Interval, ZigzagModule};

/// `lf(V[k, n])`: the right filtration of the reversed tail, a chain
/// `L_0 <= ... <= L_{n+1-k}` of subspaces of `V_k`.
pub fn left_filtration(m: &ZigzagModule, k: usize) -> Result<Vec<Subspace>> {
    let n = m.len();
    let tail = m.restrict(k, n)?.reverse();
    rf_abstract(&tail, n + 1 - k)
}

/// Dimensions of `R_i ∩ L_j` for the two filtrations of `V_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BifiltrationDims {
    pub k: usize,
    /// `dim R_i`, `0 <= i <= k`
    pub right: Vec<usize>,
    /// `dim L_j`, `0 <= j <= n + 1 - k`
    pub left: Vec<usize>,
    /// `table[i][j] = dim(R_i ∩ L_j)`
    pub table: Vec<Vec<usize>>,
}

impl BifiltrationDims {
    /// Inclusion–exclusion: the number of intervals `[bt_k(i), dt_k(j)]`.
    pub fn multiplicity(&self, i: usize, j: usize) -> Result<usize> {
        let t = &self.table;
        let plus = t[i][j] + t[i - 1][j - 1];
        let minus = t[i - 1][j] + t[i][j - 1];
        plus.checked_sub(minus).ok_or_else(|| {
            Error::Invariant(format!(
                "negative bifiltration count at k = {}, (i, j) = ({i}, {j})",
                self.k
            ))
        })
    }
}

pub fn bifiltration(m: &ZigzagModule, k: usize) -> Result<BifiltrationDims> {
    let right = rf_abstract(m, k)?;
    let left = left_filtration(m, k)?;
    let table = right
        .iter()
        .map(|r| left.iter().map(|l| r.intersect(l).map(|s| s.dim())).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(BifiltrationDims {
        k,
        right: right.iter().map(Subspace::dim).collect(),
        left: left.iter().map(Subspace::dim).collect(),
        table,
    })
}

/// All intervals of `Pers(m)` that contain `k`, with multiplicities.
pub fn localize_at(m: &ZigzagModule, k: usize) -> Result<Barcode> {
    let n = m.len();
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={n}")));
    }
    let bt = birth_time_index(&m.ty().prefix(k)?);
    let dt = death_time_index(m.ty(), k)?;
    let dims = bifiltration(m, k)?;
    let mut out = Barcode::new(Grid::Integer { len: n });
    for i in 1..=k {
        for j in 1..=n + 1 - k {
            let c = dims.multiplicity(i, j)?;
            out.add(
                Interval {
                    birth: bt[i - 1],
                    death: dt[j - 1],
                },
                None,
                c,
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::barcode;
    use crate::field::Field;
    use crate::filtration::chain_dims;
    use crate::harness::{plant, random_module_low_rank, random_type, Rng};
    use crate::matrix::Matrix;
    use crate::zigzag::ZigzagType;
    use proptest::prelude::*;

    fn ty(s: &str) -> ZigzagType {
        s.parse().unwrap()
    }

    fn caution1() -> ZigzagModule {
        let f = Field::gf2();
        ZigzagModule::new(
            f,
            ty("gf"),
            vec![1, 2, 1],
            vec![
                Matrix::from_rows(f, &[[1, 0]]).unwrap(),
                Matrix::from_rows(f, &[[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn caution1_at_two() {
        let bc = localize_at(&caution1(), 2).unwrap();
        assert_eq!(bc, Barcode::from_intervals(3, [(1, 2), (2, 3)]));
        assert_eq!(localize_at(&caution1(), 1).unwrap(), Barcode::from_intervals(3, [(1, 2)]));
    }

    #[test]
    fn left_filtration_of_one_arrow_has_depth_two() {
        let f = Field::gf2();
        let m = ZigzagModule::new(f, ty("f"), vec![2, 1], vec![Matrix::from_rows(f, &[[1, 1]]).unwrap()]).unwrap();
        let l = left_filtration(&m, 1).unwrap();
        assert_eq!(l.len(), 3);
        // (0, f^{-1}(0), V_1)
        assert_eq!(chain_dims(&l), vec![1, 1]);
        assert_eq!(l[1], Subspace::kernel_of(m.map(1)));
    }

    #[test]
    fn left_filtration_for_ffg_at_two() {
        // (0, f_2^{-1}(0), f_2^{-1} g_3(V_4), V_2)
        let f = Field::new(5).unwrap();
        let m = ZigzagModule::new(
            f,
            ty("ffg"),
            vec![1, 3, 2, 1],
            vec![
                Matrix::from_rows(f, &[[1], [0], [0]]).unwrap(),
                Matrix::from_rows(f, &[[1, 0, 0], [0, 1, 0]]).unwrap(),
                Matrix::from_rows(f, &[[1], [0]]).unwrap(),
            ],
        )
        .unwrap();
        let l = left_filtration(&m, 2).unwrap();
        let f2 = m.map(2);
        let g3 = m.map(3);
        assert_eq!(l[0], Subspace::zero(f, 3));
        assert_eq!(l[1], Subspace::zero(f, 2).preimage(f2).unwrap());
        let g3v4 = Subspace::full(f, 1).image(g3).unwrap();
        assert_eq!(l[2], g3v4.preimage(f2).unwrap());
        assert_eq!(l[3], Subspace::full(f, 3));
    }

    #[test]
    fn empty_position_localizes_to_nothing() {
        let f = Field::gf2();
        let m = ZigzagModule::new(
            f,
            ty("fg"),
            vec![1, 0, 1],
            vec![Matrix::zeros(f, 0, 1), Matrix::zeros(f, 0, 1)],
        )
        .unwrap();
        assert!(localize_at(&m, 2).unwrap().is_empty());
        assert!(localize_at(&m, 4).is_err());
    }

    #[test]
    fn three_lines_admit_no_common_adapted_basis() {
        // R_1 = F + 0, 0 + F and the diagonal in F^2 over GF(2)
        let f = Field::gf2();
        let line = |v: [i64; 2]| Subspace::span(&Matrix::from_row_major(f, 2, 1, &v).unwrap());
        let lines = [line([1, 0]), line([0, 1]), line([1, 1])];
        let vectors: Vec<[i64; 2]> = vec![[1, 0], [0, 1], [1, 1]];
        let adapted = |u: [i64; 2], v: [i64; 2], chosen: &[usize]| {
            chosen.iter().all(|&c| lines[c] == line(u) || lines[c] == line(v))
        };
        let mut pair_ok = [[false; 3]; 3];
        let mut all_three = false;
        for (a, &u) in vectors.iter().enumerate() {
            for &v in &vectors[a + 1..] {
                for (x, row) in pair_ok.iter_mut().enumerate() {
                    for (y, ok) in row.iter_mut().enumerate() {
                        *ok |= adapted(u, v, &[x, y]);
                    }
                }
                all_three |= adapted(u, v, &[0, 1, 2]);
            }
        }
        assert!(pair_ok.iter().flatten().all(|&ok| ok));
        assert!(!all_three);
    }

    fn through(bc: &Barcode, k: usize) -> Barcode {
        bc.filter(|iv, _| iv.contains(k))
    }

    proptest! {
        #[test]
        fn agrees_with_decompose(seed: u64, len in 1usize..=7, p in prop::sample::select(vec![2u64, 3, 5])) {
            let mut rng = Rng::new(seed);
            let f = Field::new(p).unwrap();
            let t = random_type(&mut rng, len);
            let m = random_module_low_rank(&mut rng, f, &t, 4);
            let bc = barcode(&m).unwrap();
            for k in 1..=len {
                let dims = bifiltration(&m, k).unwrap();
                prop_assert_eq!(dims.table[k][len + 1 - k], m.dim(k));
                prop_assert_eq!(localize_at(&m, k).unwrap(), through(&bc, k));
            }
        }

        #[test]
        fn recovers_planted_intervals(seed: u64, len in 1usize..=8) {
            let f = Field::new(5).unwrap();
            let t = random_type(&mut Rng::new(!seed), len);
            let inst = plant(seed, &t, 6, f);
            for k in 1..=len {
                prop_assert_eq!(localize_at(&inst.module, k).unwrap(), through(&inst.truth, k));
            }
        }
    }
}
