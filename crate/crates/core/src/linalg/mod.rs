//! Dense exact matrices.
//!
//! [`Matrix`] is immutable once built; every operation returns a new value.
//! Arithmetic is checked, so an overflow surfaces as
//! [`LinalgError::IntegerOverflow`] rather than a wrapped entry.

pub(crate) mod elim;
mod text;

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

use crate::scalar::Scalar;

pub use text::ParseMatrixError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("integer overflow in {op}")]
    IntegerOverflow { op: &'static str },
    #[error("expected {expected} entries for the declared shape, found {found}")]
    BadShape { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
}

pub type Result<T, E = LinalgError> = std::result::Result<T, E>;

/// Dense row-major matrix over an exact scalar type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        let expected = rows * cols;
        if data.len() != expected {
            return Err(LinalgError::BadShape {
                expected,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LinalgError::BadShape {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// All-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::one(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.row_iter().map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a.checked_add(b))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a.checked_sub(b))
    }

    pub fn scale(&self, factor: &T) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.checked_mul(factor))
            .collect::<Option<Vec<_>>>()
            .ok_or(LinalgError::IntegerOverflow { op: "scale" })?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn zip_with(
        &self,
        rhs: &Self,
        op: &'static str,
        f: impl Fn(&T, &T) -> Option<T>,
    ) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f(a, b))
            .collect::<Option<Vec<_>>>()
            .ok_or(LinalgError::IntegerOverflow { op })?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Exact product `self * rhs`.
    ///
    /// For bounded integer types the worst-case accumulator magnitude
    /// `max|a| * max|b| * inner` is computed first; when it fits, the
    /// unchecked kernel is provably exact. Otherwise every step is checked.
    /// Both kernels visit terms in the same order, so results never depend
    /// on which one ran.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "multiply",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        if self.fast_product_is_exact(rhs) {
            Ok(self.multiply_unchecked(rhs))
        } else {
            self.multiply_checked(rhs)
        }
    }

    fn fast_product_is_exact(&self, rhs: &Self) -> bool {
        let Some(limit) = T::MAX_MAGNITUDE else {
            return false;
        };
        let max_mag = |m: &Self| -> Option<u128> {
            m.data
                .iter()
                .try_fold(0u128, |acc, x| x.magnitude().map(|v| acc.max(v)))
        };
        match (max_mag(self), max_mag(rhs)) {
            (Some(a), Some(b)) => a
                .checked_mul(b)
                .and_then(|ab| ab.checked_mul(self.cols.max(1) as u128))
                .is_some_and(|bound| bound <= limit),
            _ => false,
        }
    }

    fn multiply_unchecked(&self, rhs: &Self) -> Self {
        let (n, inner, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![T::zero(); n * m];
        for i in 0..n {
            let acc = &mut out[i * m..(i + 1) * m];
            for k in 0..inner {
                let a = &self.data[i * inner + k];
                if a.is_zero() {
                    continue;
                }
                let b_row = &rhs.data[k * m..(k + 1) * m];
                if a.is_one() {
                    for (o, b) in acc.iter_mut().zip(b_row) {
                        *o = o.clone() + b.clone();
                    }
                } else {
                    for (o, b) in acc.iter_mut().zip(b_row) {
                        *o = o.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Self {
            rows: n,
            cols: m,
            data: out,
        }
    }

    fn multiply_checked(&self, rhs: &Self) -> Result<Self> {
        let overflow = LinalgError::IntegerOverflow { op: "multiply" };
        let (n, inner, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![T::zero(); n * m];
        for i in 0..n {
            let acc = &mut out[i * m..(i + 1) * m];
            for k in 0..inner {
                let a = &self.data[i * inner + k];
                if a.is_zero() {
                    continue;
                }
                let b_row = &rhs.data[k * m..(k + 1) * m];
                for (o, b) in acc.iter_mut().zip(b_row) {
                    let term = a.checked_mul(b).ok_or_else(|| overflow.clone())?;
                    *o = o.checked_add(&term).ok_or_else(|| overflow.clone())?;
                }
            }
        }
        Ok(Self {
            rows: n,
            cols: m,
            data: out,
        })
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i, j] * rhs`.
    pub fn kronecker(&self, rhs: &Self) -> Result<Self> {
        let (br, bc) = rhs.shape();
        let rows = self.rows * br;
        let cols = self.cols * bc;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..self.rows {
            for bi in 0..br {
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    for b in rhs.row(bi) {
                        data.push(
                            a.checked_mul(b)
                                .ok_or(LinalgError::IntegerOverflow { op: "kronecker" })?,
                        );
                    }
                }
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// `self^exp` for a square matrix, by repeated multiplication.
    pub fn power(&self, exp: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch {
                op: "power",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Row sums, each computed with checked addition.
    pub fn row_sums(&self) -> Result<Vec<T>> {
        self.row_iter()
            .map(|r| {
                r.iter()
                    .try_fold(T::zero(), |acc, x| acc.checked_add(x))
                    .ok_or(LinalgError::IntegerOverflow { op: "row_sums" })
            })
            .collect()
    }

    pub fn col_sums(&self) -> Result<Vec<T>> {
        let mut sums = vec![T::zero(); self.cols];
        for row in self.row_iter() {
            for (s, x) in sums.iter_mut().zip(row) {
                *s = s
                    .checked_add(x)
                    .ok_or(LinalgError::IntegerOverflow { op: "col_sums" })?;
            }
        }
        Ok(sums)
    }

    /// `Σ coeff_i · M_i` over matrices of a common shape.
    pub fn linear_combination(terms: &[(T, &Self)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Ok(Self::zeros(0, 0));
        };
        let mut acc = Self::zeros(first.rows, first.cols);
        for (c, m) in terms {
            acc = acc.checked_add(&m.scale(c)?)?;
        }
        Ok(acc)
    }
}

/// `a * b`; see [`Matrix::multiply`].
pub fn multiply<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.multiply(b)
}

/// `a ⊗ b`; see [`Matrix::kronecker`].
pub fn kronecker<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.kronecker(b)
}

pub fn transpose<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    a.transpose()
}

impl<T: Scalar + fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_iter() {
            write!(f, " ")?;
            for x in row {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar + Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for row in self.row_iter() {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}
