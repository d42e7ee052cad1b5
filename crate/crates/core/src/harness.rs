//! Seeded random instances with planted ground truth.
//!
//! All randomness comes from SplitMix64 (`state += 0x9E3779B97F4A7C15`,
//! then the xor-shift-multiply finaliser with constants
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`). Bounded draws use the
//! multiply-high reduction `(x * n) >> 64`, so a seed reproduces the same
//! instance on any platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::field::Field;
use crate::matrix::{ElemOp, Matrix};
use crate::zigzag::{interval_module, Arrow, Barcode, Interval, ZigzagModule, ZigzagType};

/// Deterministic random source used by every generator in this crate.
#[derive(Debug, Clone)]
pub struct Rng(SplitMix64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }

    pub fn element(&mut self, field: Field) -> u32 {
        self.below(field.p() as usize) as u32
    }

    pub fn nonzero(&mut self, field: Field) -> u32 {
        1 + self.below(field.p() as usize - 1) as u32
    }

    /// Fisher–Yates shuffle of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i + 1);
            p.swap(i, j);
        }
        p
    }
}

pub fn random_matrix(rng: &mut Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.element(field));
        }
    }
    m
}

/// Random matrix of rank at most `rank`, as a product of two random factors.
pub fn random_low_rank(rng: &mut Rng, field: Field, rows: usize, cols: usize, rank: usize) -> Matrix {
    let a = random_matrix(rng, field, rows, rank);
    let b = random_matrix(rng, field, rank, cols);
    a.mul(&b).expect("inner dimensions agree")
}

/// A random invertible matrix: a permutation matrix followed by a batch of
/// random scalings and row additions.
pub fn random_invertible(rng: &mut Rng, size: usize, field: Field) -> Matrix {
    let perm = rng.permutation(size);
    let mut m = Matrix::identity(field, size).permute_columns(&perm);
    if size == 0 {
        return m;
    }
    for _ in 0..4 * size {
        let op = if size > 1 && rng.chance(3, 4) {
            let target = rng.below(size);
            let mut source = rng.below(size - 1);
            if source >= target {
                source += 1;
            }
            ElemOp::AddMultiple {
                target,
                source,
                factor: rng.nonzero(field),
            }
        } else {
            ElemOp::Scale {
                line: rng.below(size),
                factor: rng.nonzero(field),
            }
        };
        m.apply_row_op(&op);
    }
    m
}

pub fn random_type(rng: &mut Rng, len: usize) -> ZigzagType {
    let arrows = (1..len.max(1))
        .map(|_| if rng.coin() { Arrow::Forward } else { Arrow::Backward })
        .collect();
    ZigzagType::new(arrows)
}

/// A module with uniformly random dimensions in `0..=max_dim` and uniformly
/// random matrices. Maps of rank below the maximum appear mostly over GF(2);
/// use [`random_module_low_rank`] for more degenerate instances.
pub fn random_module(rng: &mut Rng, field: Field, ty: &ZigzagType, max_dim: usize) -> ZigzagModule {
    let dims: Vec<usize> = (0..ty.len()).map(|_| rng.below(max_dim + 1)).collect();
    let maps = ty
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| match a {
            Arrow::Forward => random_matrix(rng, field, dims[i + 1], dims[i]),
            Arrow::Backward => random_matrix(rng, field, dims[i], dims[i + 1]),
        })
        .collect();
    ZigzagModule::new(field, ty.clone(), dims, maps).expect("shapes follow the dims")
}

/// Like [`random_module`] but every map has a randomly chosen rank cap.
pub fn random_module_low_rank(
    rng: &mut Rng,
    field: Field,
    ty: &ZigzagType,
    max_dim: usize,
) -> ZigzagModule {
    let dims: Vec<usize> = (0..ty.len()).map(|_| rng.below(max_dim + 1)).collect();
    let maps = ty
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (rows, cols) = match a {
                Arrow::Forward => (dims[i + 1], dims[i]),
                Arrow::Backward => (dims[i], dims[i + 1]),
            };
            let rank = rng.below(rows.min(cols) + 1);
            random_low_rank(rng, field, rows, cols, rank)
        })
        .collect();
    ZigzagModule::new(field, ty.clone(), dims, maps).expect("shapes follow the dims")
}

/// Random invertible change of basis at every position.
pub fn scramble(rng: &mut Rng, m: &ZigzagModule) -> ZigzagModule {
    let bases: Vec<Matrix> = m
        .dims()
        .iter()
        .map(|&d| random_invertible(rng, d, m.field()))
        .collect();
    m.change_basis(&bases).expect("random bases are invertible")
}

/// Uniform draw among the `n(n+1)/2` subintervals of `1..=n`.
pub fn random_interval(rng: &mut Rng, n: usize) -> Interval {
    let mut idx = rng.below(n * (n + 1) / 2);
    for b in 1..=n {
        let count = n + 1 - b;
        if idx < count {
            return Interval {
                birth: b,
                death: b + idx,
            };
        }
        idx -= count;
    }
    unreachable!("index below the interval count")
}

/// A module built as a scrambled direct sum of known intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub module: ZigzagModule,
    pub truth: Barcode,
    pub seed: u64,
}

/// Draw between 1 and `max_intervals` intervals (none if it is 0), sum their interval modules
/// and apply a random change of basis.
pub fn plant(seed: u64, ty: &ZigzagType, max_intervals: usize, field: Field) -> PlantedInstance {
    let mut rng = Rng::new(seed);
    let n = ty.len();
    let count = if max_intervals == 0 { 0 } else { rng.between(1, max_intervals) };
    let mut truth = Barcode::from_intervals(n, []);
    let mut module = ZigzagModule::zero(field, ty.clone());
    for _ in 0..count {
        let iv = random_interval(&mut rng, n);
        truth.add(iv, None, 1);
        let summand = interval_module(field, ty, iv.birth, iv.death).expect("interval is in range");
        module = module.direct_sum(&summand).expect("same type and field");
    }
    let module = scramble(&mut rng, &module);
    PlantedInstance {
        module,
        truth,
        seed,
    }
}
