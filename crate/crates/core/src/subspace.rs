//! Subspaces of `F^n` held as canonical span bases.
//!
//! Every [`Subspace`] keeps its basis in reduced column echelon form, so two
//! subspaces are equal exactly when their bases are equal.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    /// `ambient x dim`, independent columns in reduced column echelon form.
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, ambient, 0),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Span of the columns of `m` (which need not be independent).
    pub fn span(m: &Matrix) -> Self {
        let (r, pivots) = m.transpose().rref();
        let basis = r.slice(0..pivots.len(), 0..m.rows()).transpose();
        Subspace { basis }
    }

    /// Image of a linear map given by its matrix.
    pub fn image_of(m: &Matrix) -> Self {
        Subspace::span(m)
    }

    /// Null space of a linear map given by its matrix.
    pub fn kernel_of(m: &Matrix) -> Self {
        Subspace::span(&m.kernel())
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().p(), other.field().p()));
        }
        Ok(())
    }

    /// `map(self)` for a map out of the ambient space.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        Ok(Subspace::span(&map.mul(&self.basis)?))
    }

    /// `map^{-1}(self)` for a map into the ambient space.
    pub fn preimage(&self, map: &Matrix) -> Result<Subspace> {
        if map.rows() != self.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "preimage under a {}x{} map of a subspace of F^{}",
                map.rows(),
                map.cols(),
                self.ambient()
            )));
        }
        // (x, y) with map*x + basis*y = 0; the x-parts span the preimage
        let k = map.hstack(&self.basis)?.kernel();
        Ok(Subspace::span(&k.slice(0..map.cols(), 0..k.cols())))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let k = self.basis.hstack(&other.basis)?.kernel();
        let coeffs = k.slice(0..self.dim(), 0..k.cols());
        Ok(Subspace::span(&self.basis.mul(&coeffs)?))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)?))
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let col = Matrix::from_columns(self.field(), self.ambient(), &[v.to_vec()]);
        self.basis.solve(&col).is_ok()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(match self.basis.solve(&other.basis) {
            Ok(_) => true,
            Err(Error::NoSolution) => false,
            Err(e) => return Err(e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn vecs(f: Field, n: usize, cols: &[&[i64]]) -> Matrix {
        let cols: Vec<Vec<u32>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| f.reduce(x)).collect())
            .collect();
        Matrix::from_columns(f, n, &cols)
    }

    #[test]
    fn span_is_canonical() {
        let f = gf(5);
        let a = Subspace::span(&vecs(f, 3, &[&[1, 2, 0], &[0, 1, 1]]));
        let b = Subspace::span(&vecs(f, 3, &[&[1, 3, 1], &[2, 4, 0], &[1, 3, 1]]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let f = gf(2);
        let xy = Subspace::span(&vecs(f, 3, &[&[1, 0, 0], &[0, 1, 0]]));
        let yz = Subspace::span(&vecs(f, 3, &[&[0, 1, 0], &[0, 0, 1]]));
        let y = xy.intersect(&yz).unwrap();
        assert_eq!(y, Subspace::span(&vecs(f, 3, &[&[0, 1, 0]])));
        assert_eq!(xy.sum(&yz).unwrap(), Subspace::full(f, 3));
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let f = gf(3);
        let g = Matrix::from_rows(f, &[[1, 1, 0], [0, 0, 1]]).unwrap();
        let pre = Subspace::zero(f, 2).preimage(&g).unwrap();
        assert_eq!(pre, Subspace::kernel_of(&g));
        assert_eq!(pre.dim(), 1);
        assert!(pre.contains_vector(&[1, 2, 0]));
    }

    #[test]
    fn image_and_preimage_of_full_space() {
        let f = gf(5);
        let m = Matrix::from_rows(f, &[[1, 2], [2, 4], [0, 0]]).unwrap();
        assert_eq!(Subspace::full(f, 2).image(&m).unwrap().dim(), 1);
        assert_eq!(Subspace::full(f, 3).preimage(&m).unwrap(), Subspace::full(f, 2));
    }

    #[test]
    fn zero_dimensional_ambient() {
        let f = gf(2);
        let z = Subspace::full(f, 0);
        assert_eq!(z.dim(), 0);
        let m = Matrix::zeros(f, 0, 2);
        assert_eq!(z.preimage(&m).unwrap(), Subspace::full(f, 2));
        assert_eq!(Subspace::full(f, 2).image(&m).unwrap(), z);
    }

    #[test]
    fn containment() {
        let f = gf(5);
        let line = Subspace::span(&vecs(f, 2, &[&[1, 1]]));
        let full = Subspace::full(f, 2);
        assert!(full.contains(&line).unwrap());
        assert!(!line.contains(&full).unwrap());
        assert!(line.contains(&Subspace::zero(f, 2)).unwrap());
    }
}
