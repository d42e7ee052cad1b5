//! Dense row-major matrices over GF(p) and the elimination primitives the
//! rest of the crate is built on.
//!
//! Zero-row and zero-column matrices are valid values: they are the maps to
//! and from the zero vector space.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// One elementary operation on the rows (or columns) of a matrix.
///
/// Whether an op acts on rows or on columns is determined by the routine
/// that produced or consumes it; the op itself is axis-agnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElemOp {
    /// Interchange lines `a` and `b`.
    Swap(usize, usize),
    /// Multiply line `line` by the nonzero scalar `factor`.
    Scale { line: usize, factor: u32 },
    /// `line[target] += factor * line[source]`.
    AddMultiple { target: usize, source: usize, factor: u32 },
}

impl ElemOp {
    /// The op that undoes `self`.
    pub fn inverse(&self, field: Field) -> ElemOp {
        match *self {
            ElemOp::Swap(a, b) => ElemOp::Swap(a, b),
            ElemOp::Scale { line, factor } => ElemOp::Scale {
                line,
                factor: field.inv(factor).expect("scale factor is nonzero"),
            },
            ElemOp::AddMultiple {
                target,
                source,
                factor,
            } => ElemOp::AddMultiple {
                target,
                source,
                factor: field.neg(factor),
            },
        }
    }

    /// The op `E'` with `E' = (E^{-1})^T`: what must happen to the rows of a
    /// matrix on the other side of a basis change performed by `self` on
    /// columns (and vice versa).
    pub fn dual(&self, field: Field) -> ElemOp {
        match *self {
            ElemOp::Swap(a, b) => ElemOp::Swap(a, b),
            ElemOp::Scale { line, factor } => ElemOp::Scale {
                line,
                factor: field.inv(factor).expect("scale factor is nonzero"),
            },
            ElemOp::AddMultiple {
                target,
                source,
                factor,
            } => ElemOp::AddMultiple {
                target: source,
                source: target,
                factor: field.neg(factor),
            },
        }
    }
}

/// Result of an echelon reduction: the reduced matrix, its pivots as
/// `(row, col)` pairs (0-based), and the transcript of elementary operations
/// that turns the input into the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<(usize, usize)>,
    pub ops: Vec<ElemOp>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from row-major integer data; entries are reduced mod p.
    pub fn from_row_major(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&x| field.reduce(x)).collect(),
        })
    }

    /// Build from nested rows. All rows must have the same length; an empty
    /// slice gives a 0x0 matrix (use [`Matrix::zeros`] for 0xk shapes).
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % field.p());
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Rows as nested vectors, entries in `0..p`.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = ((*d as u64 + a * b as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
            ..*self
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * out.cols..(r + 1) * out.cols];
            dst[..self.cols].copy_from_slice(self.row(r));
            dst[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// Sub-matrix of the given row range and column range.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    /// Reorder columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Matrix {
        assert_eq!(perm.len(), self.cols);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for (j, &src) in perm.iter().enumerate() {
                out.data[r * self.cols + j] = self.data[r * self.cols + src];
            }
        }
        out
    }

    /// Reorder rows: row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Matrix {
        assert_eq!(perm.len(), self.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for (i, &src) in perm.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(src));
        }
        out
    }

    pub fn apply_row_op(&mut self, op: &ElemOp) {
        let f = self.field;
        let cols = self.cols;
        match *op {
            ElemOp::Swap(a, b) => {
                if a != b {
                    for c in 0..cols {
                        self.data.swap(a * cols + c, b * cols + c);
                    }
                }
            }
            ElemOp::Scale { line, factor } => {
                for c in 0..cols {
                    let x = &mut self.data[line * cols + c];
                    *x = f.mul(*x, factor);
                }
            }
            ElemOp::AddMultiple {
                target,
                source,
                factor,
            } => {
                for c in 0..cols {
                    let s = self.data[source * cols + c];
                    let t = &mut self.data[target * cols + c];
                    *t = f.add(*t, f.mul(factor, s));
                }
            }
        }
    }

    pub fn apply_col_op(&mut self, op: &ElemOp) {
        let f = self.field;
        let cols = self.cols;
        match *op {
            ElemOp::Swap(a, b) => {
                if a != b {
                    for r in 0..self.rows {
                        self.data.swap(r * cols + a, r * cols + b);
                    }
                }
            }
            ElemOp::Scale { line, factor } => {
                for r in 0..self.rows {
                    let x = &mut self.data[r * cols + line];
                    *x = f.mul(*x, factor);
                }
            }
            ElemOp::AddMultiple {
                target,
                source,
                factor,
            } => {
                for r in 0..self.rows {
                    let s = self.data[r * cols + source];
                    let t = &mut self.data[r * cols + target];
                    *t = f.add(*t, f.mul(factor, s));
                }
            }
        }
    }

    /// Unreduced row echelon form using row operations only.
    ///
    /// Columns are scanned left to right; within a column the first nonzero
    /// entry at or below the current pivot row wins. Pivots are scaled to 1
    /// and only the entries below a pivot are cleared.
    pub fn row_echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(r) = (next..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            let mut record = |m: &mut Matrix, op: ElemOp| {
                m.apply_row_op(&op);
                ops.push(op);
            };
            if r != next {
                record(&mut m, ElemOp::Swap(r, next));
            }
            let lead = m.get(next, c);
            if lead != 1 {
                let factor = f.inv(lead).unwrap();
                record(&mut m, ElemOp::Scale { line: next, factor });
            }
            for below in next + 1..m.rows {
                let x = m.get(below, c);
                if x != 0 {
                    record(
                        &mut m,
                        ElemOp::AddMultiple {
                            target: below,
                            source: next,
                            factor: f.neg(x),
                        },
                    );
                }
            }
            pivots.push((next, c));
            next += 1;
        }
        Echelon {
            matrix: m,
            pivots,
            ops,
        }
    }

    /// Column echelon form anchored at the bottom left, using column
    /// operations only.
    ///
    /// The leftmost `r` columns each have a 1 as their lowest nonzero entry,
    /// each such pivot lies strictly below the pivots of the columns to its
    /// right, and the remaining columns are zero. Rows are scanned bottom to
    /// top; within a row the first nonzero column (left to right) among the
    /// unpivoted ones wins.
    pub fn col_echelon_bl(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut next = 0;
        for r in (0..m.rows).rev() {
            if next == m.cols {
                break;
            }
            let Some(c) = (next..m.cols).find(|&c| m.get(r, c) != 0) else {
                continue;
            };
            let mut record = |m: &mut Matrix, op: ElemOp| {
                m.apply_col_op(&op);
                ops.push(op);
            };
            if c != next {
                record(&mut m, ElemOp::Swap(c, next));
            }
            let lead = m.get(r, next);
            if lead != 1 {
                let factor = f.inv(lead).unwrap();
                record(&mut m, ElemOp::Scale { line: next, factor });
            }
            for right in next + 1..m.cols {
                let x = m.get(r, right);
                if x != 0 {
                    record(
                        &mut m,
                        ElemOp::AddMultiple {
                            target: right,
                            source: next,
                            factor: f.neg(x),
                        },
                    );
                }
            }
            pivots.push((r, next));
            next += 1;
        }
        Echelon {
            matrix: m,
            pivots,
            ops,
        }
    }

    /// Reduced row echelon form; returns the reduced matrix and its pivot
    /// columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(r) = (next..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.apply_row_op(&ElemOp::Swap(r, next));
            let factor = f.inv(m.get(next, c)).unwrap();
            m.apply_row_op(&ElemOp::Scale { line: next, factor });
            for other in 0..m.rows {
                if other != next {
                    let x = m.get(other, c);
                    if x != 0 {
                        m.apply_row_op(&ElemOp::AddMultiple {
                            target: other,
                            source: next,
                            factor: f.neg(x),
                        });
                    }
                }
            }
            pivot_cols.push(c);
            next += 1;
        }
        (m, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : self * x = 0}`, as the columns of a
    /// `cols x nullity` matrix.
    pub fn kernel(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Solve `self * x = b` for `x` (one column per column of `b`).
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Singular);
        }
        Ok(r.slice(0..n, n..2 * n))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] ({}x{} over {})", self.rows, self.cols, self.field)
    }
}
