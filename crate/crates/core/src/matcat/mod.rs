//! The dagger compact category of matrices over an involutive semiring.
//!
//! A morphism `n → m` is an `m × n` array so that composition is the
//! ordinary matrix product. Objects are self-dual with the canonical cup.

mod biproduct;
mod compact;
mod io;
mod ortho;
mod spectral;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{FloatScalar, Ring, Semiring, Tolerance};

pub use biproduct::{copair, pair, BiproductTag};
pub use compact::{cap, cup, partial_transpose, symmetry};
pub use io::AnyMatrix;
pub use ortho::{
    bound_holds, bound_scalar, complete_basis, dagger_normalise_state, gram_schmidt,
    homogeneity_solve, orthonormal_columns,
};
pub use spectral::{hermitian_eigenvalues, MatrixPositivity};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Semiring> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(
                "Matrix::new",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from nested rows.
    ///
    /// # Panics
    /// If the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n), "ragged rows");
        Matrix {
            rows: m,
            cols: n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn column(entries: Vec<S>) -> Self {
        Matrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn row(entries: Vec<S>) -> Self {
        Matrix {
            rows: 1,
            cols: entries.len(),
            data: entries,
        }
    }

    pub fn scalar(s: S) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            data: vec![s],
        }
    }

    /// The `i`-th standard basis state of dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        Self::from_fn(n, 1, |r, _| if r == i { S::one() } else { S::zero() })
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn col_at(&self, j: usize) -> Matrix<S> {
        Matrix::from_fn(self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn row_at(&self, i: usize) -> Matrix<S> {
        Matrix::from_fn(1, self.cols, |_, j| self.get(i, j).clone())
    }

    pub fn columns(&self) -> Vec<Matrix<S>> {
        (0..self.cols).map(|j| self.col_at(j)).collect()
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `self ∘ f`, i.e. the matrix product `self · f`.
    pub fn compose(&self, f: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != f.rows {
            return Err(Error::dims(
                "compose",
                format!(
                    "{}x{} after {}x{}",
                    self.rows, self.cols, f.rows, f.cols
                ),
            ));
        }
        Ok(self.dot(f))
    }

    /// Matrix product.
    ///
    /// # Panics
    /// If the inner dimensions differ.
    pub fn dot(&self, f: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, f.rows, "inner dimensions differ");
        let mut out = Matrix::<S>::zeros(self.rows, f.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_within(&Tolerance::new(0.0)) {
                    continue;
                }
                for j in 0..f.cols {
                    let idx = i * f.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(f.get(k, j)));
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Matrix<S> {
        self.map(S::conj)
    }

    /// Kronecker product, left factor major.
    pub fn tensor(&self, g: &Matrix<S>) -> Matrix<S> {
        Matrix::from_fn(self.rows * g.rows, self.cols * g.cols, |i, j| {
            let (i1, i2) = (i / g.rows, i % g.rows);
            let (j1, j2) = (j / g.cols, j % g.cols);
            self.get(i1, j1).mul(g.get(i2, j2))
        })
    }

    pub fn add(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.shape() != other.shape() {
            return Err(Error::dims(
                "add",
                format!("{:?} vs {:?}", self.shape(), other.shape()),
            ));
        }
        Ok(self.plus(other))
    }

    /// Entrywise sum.
    ///
    /// # Panics
    /// If the shapes differ.
    pub fn plus(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.shape(), other.shape(), "shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        self.map(|a| s.mul(a))
    }

    pub fn trace(&self) -> S {
        let n = self.rows.min(self.cols);
        (0..n).fold(S::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Horizontal concatenation (shared codomain).
    pub fn hstack(blocks: &[Matrix<S>]) -> Result<Matrix<S>> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::dims("hstack", "blocks have different row counts"));
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation (shared domain).
    pub fn vstack(blocks: &[Matrix<S>]) -> Result<Matrix<S>> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::dims("vstack", "blocks have different column counts"));
        }
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Columns `start..end` as a submatrix.
    pub fn col_range(&self, start: usize, end: usize) -> Matrix<S> {
        Matrix::from_fn(self.rows, end - start, |i, j| self.get(i, start + j).clone())
    }

    /// Rows `start..end` as a submatrix.
    pub fn row_range(&self, start: usize, end: usize) -> Matrix<S> {
        Matrix::from_fn(end - start, self.cols, |i, j| self.get(start + i, j).clone())
    }

    /// Entrywise tolerance-aware equality; different shapes are never equal.
    pub fn approx_eq(&self, other: &Matrix<S>, tol: &Tolerance) -> bool {
        self.shape() == other.shape()
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        self.data.iter().all(|a| a.is_zero_within(tol))
    }

    /// `f† f = id`.
    pub fn is_isometry(&self, tol: &Tolerance) -> bool {
        self.dagger()
            .dot(self)
            .approx_eq(&Matrix::identity(self.cols), tol)
    }

    /// `f† f = id` and `f f† = id`.
    pub fn is_unitary(&self, tol: &Tolerance) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::dims(
                "is_unitary",
                format!("{}x{} is not square", self.rows, self.cols),
            ));
        }
        Ok(self.is_isometry(tol) && self.dagger().is_isometry(tol))
    }

    /// Largest entry magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(S::magnitude).fold(0.0, f64::max)
    }
}

impl<S: Ring> Matrix<S> {
    pub fn neg(&self) -> Matrix<S> {
        self.map(S::neg)
    }

    /// Entrywise difference.
    ///
    /// # Panics
    /// If the shapes differ.
    pub fn minus(&self, other: &Matrix<S>) -> Matrix<S> {
        self.plus(&other.neg())
    }
}

impl<F: FloatScalar> Matrix<F> {
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(F::norm_sqr).sum::<f64>().sqrt()
    }

    /// Frobenius norm of `self − other`.
    ///
    /// # Panics
    /// If the shapes differ.
    pub fn distance(&self, other: &Matrix<F>) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shapes differ");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius-norm comparison: `‖a − b‖ ≤ abs + rel·max(‖a‖, ‖b‖)`.
    pub fn close_to(&self, other: &Matrix<F>, tol: &Tolerance) -> bool {
        self.shape() == other.shape()
            && tol.accepts(
                self.distance(other),
                self.frobenius_norm().max(other.frobenius_norm()),
            )
    }

    pub fn scale_real(&self, x: f64) -> Matrix<F> {
        self.map(|a| a.scale(x))
    }

    /// `v† w` for columns.
    pub fn inner(&self, other: &Matrix<F>) -> F {
        self.data
            .iter()
            .zip(&other.data)
            .fold(F::zero(), |acc, (a, b)| acc.add(&a.conj().mul(b)))
    }

    /// Distance of `f† f` from the identity.
    pub fn isometry_defect(&self) -> f64 {
        self.dagger().dot(self).distance(&Matrix::identity(self.cols))
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
