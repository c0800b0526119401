//! Gauss-Jordan elimination over exact fields (crate-internal).

use super::{LinalgError, Matrix, Result};
use crate::scalar::FieldScalar;

const OVERFLOW: LinalgError = LinalgError::IntegerOverflow { op: "elimination" };

/// Reduced row-echelon form with leftmost pivots, plus pivot columns.
pub(crate) fn rref<F: FieldScalar>(m: &Matrix<F>) -> Result<(Matrix<F>, Vec<usize>)> {
    let (rows, cols) = m.shape();
    let mut a = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = F::one().checked_div(&a[r][c]).ok_or(OVERFLOW)?;
        for x in a[r].iter_mut() {
            *x = x.checked_mul(&inv).ok_or(OVERFLOW)?;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                let t = f.checked_mul(y).ok_or(OVERFLOW)?;
                *x = x.checked_sub(&t).ok_or(OVERFLOW)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok((Matrix::from_rows(&a)?, pivots))
}

/// Basis of `{x : m x = 0}`, one vector per free column in ascending order.
pub(crate) fn nullspace<F: FieldScalar>(m: &Matrix<F>) -> Result<Vec<Vec<F>>> {
    let (r, pivots) = rref(m)?;
    let cols = m.cols();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = F::zero().checked_sub(r.get(row, free)).ok_or(OVERFLOW)?;
        }
        basis.push(v);
    }
    Ok(basis)
}

pub(crate) fn inverse<F: FieldScalar>(m: &Matrix<F>) -> Result<Matrix<F>> {
    let n = m.rows();
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch {
            op: "inverse",
            left: m.shape(),
            right: m.shape(),
        });
    }
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let (r, pivots) = rref(&aug)?;
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}
