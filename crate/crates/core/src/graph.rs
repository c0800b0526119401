//! Strongly regular graphs and the partial geometric designs they give.
//!
//! For an SRG with parameters `(v, k, λ, μ)`, `A³ = βA + α(J − A)` has a
//! solution exactly when `λ = μ` or `k = μ`; [`srg_pgd_params`] evaluates
//! the closed form and [`crate::design::pgd_certify`] checks it directly.

use serde::Serialize;
use thiserror::Error;

use crate::design::{validate_simple_adjacency, DesignError};
use crate::linalg::LinalgError;
use crate::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("bad adjacency matrix: {0}")]
    BadAdjacency(#[source] DesignError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SrgParams {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl SrgParams {
    pub const fn new(v: i64, k: i64, lambda: i64, mu: i64) -> Self {
        Self { v, k, lambda, mu }
    }

    /// `k(k − λ − 1) = (v − k − 1)μ`.
    pub fn is_feasible(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }
}

/// Parameters of the graph if `A² = kI + λA + μ(J − I − A)` holds.
///
/// A graph with no edges reports `λ = 0`; a complete graph reports `μ = k`,
/// the value under which it is the one-part complete multipartite graph.
pub fn srg_certify(a: &IntMatrix) -> Result<Option<SrgParams>> {
    validate_simple_adjacency(a).map_err(GraphError::BadAdjacency)?;
    let v = a.rows();
    if v == 0 {
        return Ok(None);
    }
    let degrees = a.row_sums()?;
    let k = degrees[0];
    if degrees.iter().any(|&d| d != k) {
        return Ok(None);
    }
    let sq = a.multiply(a)?;
    let mut lambda = None;
    let mut mu = None;
    for i in 0..v {
        for j in 0..v {
            let x = *sq.get(i, j);
            let slot = if i == j {
                if x != k {
                    return Ok(None);
                }
                continue;
            } else if *a.get(i, j) == 1 {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(x),
                Some(y) if y != x => return Ok(None),
                _ => {}
            }
        }
    }
    Ok(Some(SrgParams {
        v: v as i64,
        k,
        lambda: lambda.unwrap_or(0),
        mu: mu.unwrap_or(k),
    }))
}

/// `(α, β)` of the design given by an SRG, when `λ = μ` or `k = μ`.
pub fn srg_pgd_params(p: SrgParams) -> Option<(i64, i64)> {
    let SrgParams { k, lambda, mu, .. } = p;
    if lambda != mu && k != mu {
        return None;
    }
    let d = lambda - mu;
    let alpha = d * mu + mu * k;
    let beta = d * d + k - mu + d * mu + mu * k;
    Some((alpha, beta))
}

/// Adjacency matrix of the complement of `c` disjoint copies of `K_n`,
/// i.e. `(J_c − I_c) ⊗ J_n`.
pub fn complete_multipartite(c: usize, n: usize) -> Result<IntMatrix> {
    if c < 2 || n < 2 {
        return Err(GraphError::InvalidParameter(format!(
            "complete multipartite graph needs c, n >= 2 (got c = {c}, n = {n})"
        )));
    }
    let parts = IntMatrix::ones(c, c).checked_sub(&IntMatrix::identity(c))?;
    Ok(parts.kronecker(&IntMatrix::ones(n, n))?)
}

pub fn complete_graph(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| i64::from(i != j))
}

pub fn cycle_graph(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| {
        i64::from(n > 1 && i != j && ((i + 1) % n == j || (j + 1) % n == i))
    })
}

pub fn path_graph(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| i64::from(i + 1 == j || j + 1 == i))
}

/// Kneser graph `K(5, 2)`: 2-subsets of a 5-set, adjacent when disjoint.
pub fn petersen_graph() -> IntMatrix {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    IntMatrix::from_fn(10, 10, |i, j| {
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        i64::from(a != c && a != d && b != c && b != d)
    })
}
