//! Right filtrations, birth-time and death-time indices.
//!
//! A filtration `0 = R_0 <= R_1 <= ... <= R_k = V` is stored against an
//! adapted basis as a non-decreasing function `phi` from basis positions to
//! `1..=k`: `R_i` is spanned by the basis vectors with `phi <= i`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Echelon, Matrix};
use crate::subspace::Subspace;
use crate::zigzag::{Arrow, ZigzagModule, ZigzagType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationRep {
    depth: usize,
    phi: Vec<usize>,
}

impl FiltrationRep {
    pub fn new(depth: usize, phi: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = phi.iter().find(|&&v| v < 1 || v > depth) {
            return Err(Error::OutOfRange(format!(
                "filtration value {bad} outside 1..={depth}"
            )));
        }
        if phi.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NonMonotoneFiltration);
        }
        Ok(FiltrationRep { depth, phi })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn ambient(&self) -> usize {
        self.phi.len()
    }

    /// `phi` as a 0-based slice over basis positions; values are 1-based.
    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// Subquotient dimensions `r_1..r_k`.
    pub fn dims(&self) -> Vec<usize> {
        let mut r = vec![0; self.depth];
        for &v in &self.phi {
            r[v - 1] += 1;
        }
        r
    }

    /// `dim R_i`.
    pub fn level(&self, i: usize) -> usize {
        self.phi.partition_point(|&v| v <= i)
    }

    /// `R_0, ..., R_k` as subspaces of the ambient space.
    pub fn chain(&self, field: Field) -> Vec<Subspace> {
        let a = self.ambient();
        (0..=self.depth)
            .map(|i| Subspace::span(&Matrix::identity(field, a).slice(0..a, 0..self.level(i))))
            .collect()
    }
}

/// The right filtration of a length-1 module: `(0, V_1)`.
pub fn rf_init(a1: usize) -> FiltrationRep {
    FiltrationRep {
        depth: 1,
        phi: vec![1; a1],
    }
}

/// Advance the right filtration from `V_k` to `V_{k+1}`.
///
/// `map` is the matrix of arrow `k` (direction `arrow`). It is replaced by
/// its echelon form, which changes the basis of `V_{k+1}`. `next` is the
/// matrix of arrow `k + 1`, if any, with its direction; it absorbs the same
/// basis change so that the module stays isomorphic to the input.
pub fn rf_step(
    rep: &FiltrationRep,
    arrow: Arrow,
    map: &mut Matrix,
    next: Option<(Arrow, &mut Matrix)>,
) -> Result<FiltrationRep> {
    let (src_dim, a_next) = match arrow {
        Arrow::Forward => (map.cols(), map.rows()),
        Arrow::Backward => (map.rows(), map.cols()),
    };
    if src_dim != rep.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "filtration on a {}-dimensional space, map expects {}",
            rep.ambient(),
            src_dim
        )));
    }
    let mut next = next;
    if let Some((dir, m)) = &next {
        let side = match dir {
            Arrow::Forward => m.cols(),
            Arrow::Backward => m.rows(),
        };
        if side != a_next {
            return Err(Error::DimensionMismatch(format!(
                "adjacent map has {side} on the shared side, expected {a_next}"
            )));
        }
    }
    let field = map.field();
    let depth = rep.depth + 1;
    match arrow {
        Arrow::Forward => {
            let Echelon { matrix, pivots, ops } = map.row_echelon();
            if let Some((dir, m)) = next.as_mut() {
                for op in &ops {
                    match dir {
                        Arrow::Forward => m.apply_col_op(&op.dual(field)),
                        Arrow::Backward => m.apply_row_op(op),
                    }
                }
            }
            *map = matrix;
            let phi = (0..a_next)
                .map(|p| pivots.get(p).map_or(depth, |&(_, c)| rep.phi[c]))
                .collect();
            Ok(FiltrationRep { depth, phi })
        }
        Arrow::Backward => {
            let Echelon { matrix, pivots, ops } = map.col_echelon_bl();
            if let Some((dir, m)) = next.as_mut() {
                for op in &ops {
                    match dir {
                        Arrow::Forward => m.apply_col_op(op),
                        Arrow::Backward => m.apply_row_op(&op.dual(field)),
                    }
                }
            }
            let phi: Vec<usize> = (0..a_next)
                .map(|c| pivots.get(c).map_or(1, |&(r, _)| rep.phi[r] + 1))
                .collect();
            // pivot columns come out with decreasing phi and the kernel
            // columns (phi = 1) sit on the right; reorder the basis
            let mut perm: Vec<usize> = (0..a_next).collect();
            perm.sort_by_key(|&c| phi[c]);
            *map = matrix.permute_columns(&perm);
            if let Some((dir, m)) = next {
                *m = match dir {
                    Arrow::Forward => m.permute_columns(&perm),
                    Arrow::Backward => m.permute_rows(&perm),
                };
            }
            let phi = perm.iter().map(|&c| phi[c]).collect();
            Ok(FiltrationRep { depth, phi })
        }
    }
}

/// Right filtrations of every prefix `V[1, k]`, each expressed in the basis
/// of `module`, which is the input with all the basis changes applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightFiltration {
    pub reps: Vec<FiltrationRep>,
    pub module: ZigzagModule,
}

pub fn rf_propagate(m: &ZigzagModule) -> Result<RightFiltration> {
    let (field, ty, dims, mut maps) = m.clone().into_parts();
    let mut reps = vec![rf_init(dims[0])];
    for k in 0..maps.len() {
        let (head, tail) = maps.split_at_mut(k + 1);
        let next = tail.first_mut().map(|mat| (ty.arrows()[k + 1], mat));
        let rep = rf_step(&reps[k], ty.arrows()[k], &mut head[k], next)?;
        reps.push(rep);
    }
    let module = ZigzagModule::new(field, ty, dims, maps)?;
    Ok(RightFiltration { reps, module })
}

/// The right filtration of `V[1, k]` on `V_k` computed directly from images
/// and preimages of subspaces, without changing any basis.
pub fn rf_abstract(m: &ZigzagModule, k: usize) -> Result<Vec<Subspace>> {
    if k < 1 || k > m.len() {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={}", m.len())));
    }
    let field = m.field();
    let mut chain = vec![Subspace::zero(field, m.dim(1)), Subspace::full(field, m.dim(1))];
    for i in 1..k {
        let map = m.map(i);
        chain = match m.ty().arrow(i) {
            Arrow::Forward => {
                let mut next = chain.iter().map(|r| r.image(map)).collect::<Result<Vec<_>>>()?;
                next.push(Subspace::full(field, m.dim(i + 1)));
                next
            }
            Arrow::Backward => {
                let mut next = vec![Subspace::zero(field, m.dim(i + 1))];
                for r in &chain {
                    next.push(r.preimage(map)?);
                }
                next
            }
        };
    }
    Ok(chain)
}

/// Subquotient dimensions of a chain `R_0 <= ... <= R_k`.
pub fn chain_dims(chain: &[Subspace]) -> Vec<usize> {
    chain.windows(2).map(|w| w[1].dim() - w[0].dim()).collect()
}

/// `bt(tau)`: start from `(1)`; a forward arrow appends the new length, a
/// backward arrow prepends it.
pub fn birth_time_index(ty: &ZigzagType) -> Vec<usize> {
    let mut bt = std::collections::VecDeque::from([1]);
    for (j, a) in ty.arrows().iter().enumerate() {
        match a {
            Arrow::Forward => bt.push_back(j + 2),
            Arrow::Backward => bt.push_front(j + 2),
        }
    }
    bt.into()
}

/// `dt_k(tau) = n + 1 - bt(reverse of tau[k, n])`.
pub fn death_time_index(ty: &ZigzagType, k: usize) -> Result<Vec<usize>> {
    let n = ty.len();
    let tail = ty.window(k, n)?.reversed();
    Ok(birth_time_index(&tail).into_iter().map(|b| n + 1 - b).collect())
}
