//! Dense exact matrices over `Q` or `F_p`.
//!
//! Row-major storage. Determinism contract: `rref` scans columns left to
//! right and rows top to bottom (first nonzero entry wins, no randomized
//! pivoting), so every derived canonical form — kernel bases, particular
//! solutions, column-space bases — is reproducible bit for bit.

use crate::field::{Field, FpOps, QOps, Scalar, ScalarOps};
use crate::Error;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
enum Repr {
    Q(Vec<BigRational>),
    Fp(Vec<u64>),
}

/// A `rows x cols` matrix with entries in a fixed field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    repr: Repr,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        let repr = match field {
            Field::Rationals => Repr::Q(vec![BigRational::zero(); rows * cols]),
            Field::Prime(_) => Repr::Fp(vec![0; rows * cols]),
        };
        Matrix {
            field,
            rows,
            cols,
            repr,
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row-major scalars; length must be `rows * cols`.
    pub fn from_scalars(
        field: Field,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Matrix, Error> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix data length {} != {rows}x{cols}",
                entries.len()
            )));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (k, s) in entries.into_iter().enumerate() {
            if !field.contains(&s) {
                return Err(Error::FieldMismatch);
            }
            m.set(k / cols.max(1), k % cols.max(1), s);
        }
        Ok(m)
    }

    /// Convenience constructor from integer rows.
    pub fn from_rows_i64(field: Field, data: &[Vec<i64>]) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    /// Column vector from integers.
    pub fn col_i64(field: Field, data: &[i64]) -> Matrix {
        Matrix::from_rows_i64(field, &data.iter().map(|v| vec![*v]).collect::<Vec<_>>())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.repr {
            Repr::Q(v) => Scalar::Rational(v[i * self.cols + j].clone()),
            Repr::Fp(v) => Scalar::Mod(v[i * self.cols + j]),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match (&mut self.repr, value) {
            (Repr::Q(v), Scalar::Rational(x)) => v[k] = x,
            (Repr::Fp(v), Scalar::Mod(x)) => {
                let p = self.field.characteristic();
                v[k] = x % p;
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn set_i64(&mut self, i: usize, j: usize, value: i64) {
        self.set(i, j, self.field.from_i64(value));
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(v) => v.iter().all(|x| x.is_zero()),
            Repr::Fp(v) => v.iter().all(|x| *x == 0),
        }
    }

    pub fn entries(&self) -> Vec<Scalar> {
        (0..self.rows * self.cols.max(1))
            .filter(|k| self.rows * self.cols > 0 && *k < self.rows * self.cols)
            .map(|k| match &self.repr {
                Repr::Q(v) => Scalar::Rational(v[k].clone()),
                Repr::Fp(v) => Scalar::Mod(v[k]),
            })
            .collect()
    }

    fn same_shape(&self, other: &Matrix) -> Result<(), Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.same_shape(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => {
                Repr::Q(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Repr::Fp(a), Repr::Fp(b)) => {
                let p = self.field.characteristic();
                Repr::Fp(a.iter().zip(b).map(|(x, y)| (x + y) % p).collect())
            }
            _ => unreachable!(),
        };
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            repr,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let repr = match &self.repr {
            Repr::Q(a) => Repr::Q(a.iter().map(|x| -x).collect()),
            Repr::Fp(a) => {
                let p = self.field.characteristic();
                Repr::Fp(a.iter().map(|x| if *x == 0 { 0 } else { p - x }).collect())
            }
        };
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            repr,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        match (&mut out.repr, s) {
            (Repr::Q(v), Scalar::Rational(x)) => {
                for e in v.iter_mut() {
                    *e = &*e * x;
                }
            }
            (Repr::Fp(v), Scalar::Mod(x)) => {
                let p = self.field.characteristic();
                for e in v.iter_mut() {
                    *e = ((*e as u128 * *x as u128) % p as u128) as u64;
                }
            }
            _ => panic!("scalar/field mismatch"),
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(matmul(&QOps, a, b, self.rows, self.cols, other.cols)),
            (Repr::Fp(a), Repr::Fp(b)) => {
                let ops = FpOps {
                    p: self.field.characteristic(),
                };
                Repr::Fp(matmul(&ops, a, b, self.rows, self.cols, other.cols))
            }
            _ => unreachable!(),
        };
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            repr,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, other.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field);
        let mut out = Matrix::zeros(
            self.field,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Copies `block` into `self` with upper-left corner at `(i0, j0)`.
    pub fn paste(&mut self, i0: usize, j0: usize, block: &Matrix) {
        assert_eq!(self.field, block.field);
        assert!(i0 + block.rows <= self.rows && j0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, row0: usize, rows: usize, col0: usize, cols: usize) -> Matrix {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(row0 + i, col0 + j));
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.submatrix(0, self.rows, j, 1)
    }

    /// Kronecker product with index convention `(i, j) -> i * cols(B) + j` on
    /// both rows and columns, i.e. `out[(ia*rB+ib),(ja*cB+jb)] = A[ia,ja] * B[ib,jb]`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Matrix::zeros(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if self.field.is_zero(&a) {
                    continue;
                }
                let scaled = other.scale(&a);
                out.paste(ia * other.rows, ja * other.cols, &scaled);
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form plus the pivot column list.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match &self.repr {
            Repr::Q(v) => {
                let (data, pivots) = rref_impl(&QOps, v, self.rows, self.cols);
                (
                    Matrix {
                        field: self.field,
                        rows: self.rows,
                        cols: self.cols,
                        repr: Repr::Q(data),
                    },
                    pivots,
                )
            }
            Repr::Fp(v) => {
                let ops = FpOps {
                    p: self.field.characteristic(),
                };
                let (data, pivots) = rref_impl(&ops, v, self.rows, self.cols);
                (
                    Matrix {
                        field: self.field,
                        rows: self.rows,
                        cols: self.cols,
                        repr: Repr::Fp(data),
                    },
                    pivots,
                )
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the null space, one basis vector per column,
    /// ordered by ascending free column. Each vector has a `1` in its free
    /// coordinate, making the basis matrix rref-derived and unique.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &fj) in free.iter().enumerate() {
            out.set(fj, k, self.field.one());
            for (row, &pj) in pivots.iter().enumerate() {
                out.set(pj, k, self.field.neg(&r.get(row, fj)));
            }
        }
        out
    }

    /// Solves `self * X = rhs` columnwise, free variables set to zero.
    /// Returns `None` when any column is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>, Error> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (row, &pj) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pj, j, r.get(row, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Canonical basis of the column space: rref the transpose and transpose
    /// the nonzero rows back.
    pub fn column_space_basis(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref();
        let rank = pivots.len();
        let mut out = Matrix::zeros(self.field, self.rows, rank);
        for k in 0..rank {
            for i in 0..self.rows {
                out.set(i, k, r.get(k, i));
            }
        }
        out
    }

    /// Exact inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) => {
                if self.rank() == self.rows {
                    Some(x)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_serial()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn matmul<S: ScalarOps>(
    ops: &S,
    a: &[S::Elem],
    b: &[S::Elem],
    m: usize,
    n: usize,
    p: usize,
) -> Vec<S::Elem> {
    let mut out = vec![ops.zero(); m * p];
    for i in 0..m {
        for k in 0..n {
            let aik = &a[i * n + k];
            if ops.is_zero(aik) {
                continue;
            }
            for j in 0..p {
                let t = ops.mul(aik, &b[k * p + j]);
                out[i * p + j] = ops.add(&out[i * p + j], &t);
            }
        }
    }
    out
}

fn rref_impl<S: ScalarOps>(
    ops: &S,
    data: &[S::Elem],
    rows: usize,
    cols: usize,
) -> (Vec<S::Elem>, Vec<usize>) {
    let mut m: Vec<S::Elem> = data.to_vec();
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        // first nonzero entry at or below pivot_row
        let mut sel = None;
        for r in pivot_row..rows {
            if !ops.is_zero(&m[r * cols + col]) {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        if sel != pivot_row {
            for j in 0..cols {
                m.swap(sel * cols + j, pivot_row * cols + j);
            }
        }
        let inv = ops.inv(&m[pivot_row * cols + col]);
        for j in col..cols {
            m[pivot_row * cols + j] = ops.mul(&m[pivot_row * cols + j], &inv);
        }
        for r in 0..rows {
            if r == pivot_row || ops.is_zero(&m[r * cols + col]) {
                continue;
            }
            let factor = m[r * cols + col].clone();
            for j in col..cols {
                let t = ops.mul(&factor, &m[pivot_row * cols + j]);
                m[r * cols + j] = ops.sub(&m[r * cols + j], &t);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    (m, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = Matrix::identity(q(), 3);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero_is_fixed() {
        let z = Matrix::zeros(q(), 2, 3);
        let (r, pivots) = z.rref();
        assert_eq!(r, z);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        // [[2,4],[1,2]] over Q -> [[1,2],[0,0]], pivots [0]
        let m = Matrix::from_rows_i64(q(), &[vec![2, 4], vec![1, 2]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Matrix::from_rows_i64(q(), &[vec![1, 2], vec![0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = Matrix::from_rows_i64(q(), &[vec![2, 4, 1], vec![1, 2, 0], vec![3, 6, 1]]);
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        assert_eq!(r1, r2);
        assert_eq!(p1, p2);
    }

    #[test]
    fn kernel_identity_empty() {
        let id = Matrix::identity(f5(), 4);
        assert_eq!(id.kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_zero_full() {
        let z = Matrix::zeros(q(), 1, 2);
        let k = z.kernel_basis();
        assert_eq!(k, Matrix::identity(q(), 2));
    }

    #[test]
    fn kernel_difference_f5() {
        // [[1,-1]] over F5 -> basis {(1,1)}
        let m = Matrix::from_rows_i64(f5(), &[vec![1, -1]]);
        let k = m.kernel_basis();
        assert_eq!(k, Matrix::from_rows_i64(f5(), &[vec![1], vec![1]]));
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(q(), 3);
        let b = Matrix::col_i64(q(), &[4, -2, 7]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::zeros(q(), 2, 2);
        let b = Matrix::col_i64(q(), &[1, 0]);
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_underdetermined_canonical() {
        // [[1,1],[0,0]] x = (2,0) -> (2,0): free variable set to zero
        let a = Matrix::from_rows_i64(q(), &[vec![1, 1], vec![0, 0]]);
        let b = Matrix::col_i64(q(), &[2, 0]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::col_i64(q(), &[2, 0]));
        assert_eq!(a.mul(&x).unwrap(), b);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::zeros(q(), 2, 2);
        let b = Matrix::col_i64(q(), &[1, 0, 0]);
        assert!(a.solve(&b).is_err());
    }

    #[test]
    fn kron_unit() {
        let one = Matrix::identity(q(), 1);
        let b = Matrix::from_rows_i64(q(), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(one.kron(&b).unwrap(), b);
    }

    #[test]
    fn kron_zero() {
        let z = Matrix::zeros(q(), 2, 2);
        let b = Matrix::from_rows_i64(q(), &[vec![1, 2]]);
        assert!(z.kron(&b).unwrap().is_zero());
    }

    #[test]
    fn kron_diag() {
        let id2 = Matrix::identity(q(), 2);
        let two = Matrix::from_rows_i64(q(), &[vec![2]]);
        let k = id2.kron(&two).unwrap();
        assert_eq!(k, Matrix::from_rows_i64(q(), &[vec![2, 0], vec![0, 2]]));
    }

    #[test]
    fn kron_rank_multiplicative() {
        let a = Matrix::from_rows_i64(f5(), &[vec![1, 2, 0], vec![2, 4, 0]]);
        let b = Matrix::from_rows_i64(f5(), &[vec![1, 1], vec![0, 3]]);
        assert_eq!(
            a.kron(&b).unwrap().rank(),
            a.rank() * b.rank()
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows_i64(f5(), &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f5(), 2));
        let sing = Matrix::from_rows_i64(f5(), &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn column_space_basis_is_canonical() {
        let m = Matrix::from_rows_i64(q(), &[vec![2, 4], vec![2, 4], vec![0, 0]]);
        let b = m.column_space_basis();
        assert_eq!(b, Matrix::from_rows_i64(q(), &[vec![1], vec![1], vec![0]]));
    }
}
