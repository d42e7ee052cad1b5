//! Fixtures and slow reference computations shared by the integration tests.
#![allow(dead_code)]

use zigzag::filtration::{birth_time_index, chain_dims, rf_abstract};
use zigzag::homology::SimplicialComplex;
use zigzag::{Arrow, Barcode, Field, Interval, Matrix, Subspace, ZigzagModule, ZigzagType};

pub fn ty(s: &str) -> ZigzagType {
    s.parse().unwrap()
}

/// `F <- F^2 -> F <- ... -> F` with `n` copies of `F^2`, `N = [1 0]`, `M = [0 1]`.
pub fn caution2(n: usize) -> ZigzagModule {
    let f = Field::gf2();
    let mut dims = vec![1];
    let mut maps = Vec::new();
    for _ in 0..n {
        dims.extend([2, 1]);
        maps.push(Matrix::from_rows(f, &[[1, 0]]).unwrap());
        maps.push(Matrix::from_rows(f, &[[0, 1]]).unwrap());
    }
    ZigzagModule::new(f, ty(&"gf".repeat(n)), dims, maps).unwrap()
}

pub fn caution1() -> ZigzagModule {
    caution2(1)
}

/// `{[1,2]} ∪ {[2,4], ..., [2n-2, 2n]} ∪ {[2n, 2n+1]}`
pub fn caution2_barcode(n: usize) -> Barcode {
    let mut iv = vec![(1, 2)];
    iv.extend((1..n).map(|j| (2 * j, 2 * j + 2)));
    iv.push((2 * n, 2 * n + 1));
    Barcode::from_intervals(2 * n + 1, iv)
}

pub fn sample_barcode() -> Barcode {
    Barcode::from_intervals(4, [(1, 2), (1, 3), (3, 3), (3, 4), (3, 4)])
}

/// `c^k_i` computed from intersections with kernels and images rather than
/// from consecutive filtration dimensions.
pub fn intersection_multiplicities(m: &ZigzagModule) -> Vec<Vec<usize>> {
    let n = m.len();
    (1..=n)
        .map(|k| {
            let chain = rf_abstract(m, k).unwrap();
            if k == n {
                return chain_dims(&chain);
            }
            match m.ty().arrow(k) {
                Arrow::Forward => {
                    let ker = Subspace::kernel_of(m.map(k));
                    let cut: Vec<Subspace> = chain.iter().map(|r| r.intersect(&ker).unwrap()).collect();
                    chain_dims(&cut)
                }
                Arrow::Backward => {
                    let im = Subspace::image_of(m.map(k));
                    let cut: Vec<Subspace> = chain.iter().map(|r| r.intersect(&im).unwrap()).collect();
                    chain_dims(&chain)
                        .into_iter()
                        .zip(chain_dims(&cut))
                        .map(|(r, c)| r - c)
                        .collect()
                }
            }
        })
        .collect()
}

pub fn intersection_barcode(m: &ZigzagModule) -> Barcode {
    let c = intersection_multiplicities(m);
    let mut bc = Barcode::from_intervals(m.len(), []);
    for k in 1..=m.len() {
        let bt = birth_time_index(&m.ty().prefix(k).unwrap());
        for (i, &mult) in c[k - 1].iter().enumerate() {
            bc.add(Interval::new(bt[i], k).unwrap(), None, mult);
        }
    }
    bc
}

/// Product of the maps `V_p -> ... -> V_q` of a forward module.
pub fn composite(m: &ZigzagModule, p: usize, q: usize) -> Matrix {
    let mut acc = Matrix::identity(m.field(), m.dim(p));
    for i in p..q {
        acc = m.map(i).mul(&acc).unwrap();
    }
    acc
}

/// Every matrix over GF(2) of the given shape, in a fixed order.
pub fn all_gf2_matrices(rows: usize, cols: usize) -> Vec<Matrix> {
    let f = Field::gf2();
    let bits = rows * cols;
    (0..1u64 << bits)
        .map(|mask| {
            let entries: Vec<i64> = (0..bits).map(|b| (mask >> b & 1) as i64).collect();
            Matrix::from_row_major(f, rows, cols, &entries).unwrap()
        })
        .collect()
}

/// Every dimension vector of length `n` with entries in `0..=max`.
pub fn all_dims(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// Two arcs covering a circle on four vertices, meeting in two points.
pub fn two_arcs() -> (SimplicialComplex, SimplicialComplex) {
    let arc = |edges: &[[usize; 2]]| {
        SimplicialComplex::closure(4, edges.iter().map(|e| e.to_vec())).unwrap().0
    };
    (arc(&[[0, 1], [1, 2]]), arc(&[[2, 3], [0, 3]]))
}
