//! Incidence structures, tactical configurations and partial geometric
//! designs.
//!
//! A design is represented by its point-block incidence matrix `N`
//! (rows are points, columns are blocks). Blocks may repeat. The central
//! operation is [`pgd_certify`], which computes `M = N Nᵀ N` once and reads
//! `β` at a flag and `α` at an antiflag before checking
//! `M = β N + α (J − N)` at every cell.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Line {
    Point(usize),
    Block(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Point(i) => write!(f, "point {i}"),
            Line::Block(j) => write!(f, "block {j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("entry ({row},{col}) = {value} is not 0/1")]
    BadEntries { row: usize, col: usize, value: i64 },
    #[error("nonzero diagonal entry at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("adjacency matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("adjacency matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("not tactical: {line} has size {found}, expected {expected}")]
    NotTactical {
        line: Line,
        expected: i64,
        found: i64,
    },
    #[error("beta is not an integer: (k-1) = {} does not divide lambda(v-1) = {}", k - 1, lambda * (v - 1))]
    NonIntegerBeta { v: i64, k: i64, lambda: i64 },
    #[error("not partial geometric at (point {point}, block {block}): N Nᵀ N = {found}, expected {expected}")]
    NotPartialGeometric {
        point: usize,
        block: usize,
        expected: i64,
        found: i64,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = DesignError> = std::result::Result<T, E>;

/// Point-block incidence matrix with 0/1 entries and no empty block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    n: IntMatrix,
}

impl IncidenceStructure {
    pub fn new(n: IntMatrix) -> Result<Self> {
        for (i, row) in n.row_iter().enumerate() {
            if let Some((j, &value)) = row.iter().enumerate().find(|(_, &x)| x != 0 && x != 1) {
                return Err(DesignError::BadEntries {
                    row: i,
                    col: j,
                    value,
                });
            }
        }
        if let Some(block) = n.col_sums()?.iter().position(|&s| s == 0) {
            return Err(DesignError::EmptyBlock { block });
        }
        Ok(Self { n })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.n
    }

    pub fn points(&self) -> usize {
        self.n.rows()
    }

    pub fn blocks(&self) -> usize {
        self.n.cols()
    }

    #[inline]
    pub fn is_flag(&self, point: usize, block: usize) -> bool {
        *self.n.get(point, block) == 1
    }

    /// The dual structure, whose incidence matrix is `Nᵀ`.
    pub fn dual(&self) -> Result<Self> {
        Self::new(self.n.transpose())
    }
}

/// `(v, b, k, r)` of a tactical configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TacticalParams {
    pub v: i64,
    pub b: i64,
    pub k: i64,
    pub r: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PgdKind {
    PartialGeometric,
    /// `N = J`: there is no antiflag, so `α` is unconstrained and set to `β`.
    DegenerateNoAntiflag,
}

/// Parameters `(v, b, k, r; α, β)` witnessed by an incidence matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PgdCertificate {
    pub v: i64,
    pub b: i64,
    pub k: i64,
    pub r: i64,
    pub alpha: i64,
    pub beta: i64,
    pub kind: PgdKind,
}

impl PgdCertificate {
    pub fn is_symmetric(&self) -> bool {
        self.v == self.b
    }

    /// `(v, k; α, β)` when `v = b` (and therefore `k = r`).
    pub fn symmetric(&self) -> Option<SymmetricParams> {
        self.is_symmetric().then_some(SymmetricParams {
            v: self.v,
            k: self.k,
            alpha: self.alpha,
            beta: self.beta,
        })
    }
}

/// Parameters `(v, k; α, β)` of a symmetric partial geometric design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymmetricParams {
    pub v: i64,
    pub k: i64,
    pub alpha: i64,
    pub beta: i64,
}

impl SymmetricParams {
    pub const fn new(v: i64, k: i64, alpha: i64, beta: i64) -> Self {
        Self { v, k, alpha, beta }
    }
}

impl fmt::Display for SymmetricParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.v, self.k, self.alpha, self.beta)
    }
}

fn to_i64(x: usize) -> i64 {
    i64::try_from(x).expect("matrix dimension fits in i64")
}

/// Block size `k` and replication `r`, if all columns and all rows agree.
pub fn tactical_params(s: &IncidenceStructure) -> Result<TacticalParams> {
    let col = s.n.col_sums()?;
    let row = s.n.row_sums()?;
    let k = col.first().copied().unwrap_or(0);
    let r = row.first().copied().unwrap_or(0);
    if let Some(j) = col.iter().position(|&c| c != k) {
        return Err(DesignError::NotTactical {
            line: Line::Block(j),
            expected: k,
            found: col[j],
        });
    }
    if let Some(i) = row.iter().position(|&x| x != r) {
        return Err(DesignError::NotTactical {
            line: Line::Point(i),
            expected: r,
            found: row[i],
        });
    }
    Ok(TacticalParams {
        v: to_i64(s.points()),
        b: to_i64(s.blocks()),
        k,
        r,
    })
}

/// `λ` if every pair of distinct points lies in exactly `λ ≥ 1` common
/// blocks. Structures in which no pair of points meets a common block are
/// not counted as 2-designs.
pub fn two_design_lambda(s: &IncidenceStructure) -> Result<Option<i64>> {
    tactical_params(s)?;
    let v = s.points();
    if v < 2 {
        return Ok(None);
    }
    let gram = s.n.multiply(&s.n.transpose())?;
    let lambda = *gram.get(0, 1);
    let constant = (0..v).all(|i| (0..v).all(|j| i == j || *gram.get(i, j) == lambda));
    Ok((constant && lambda > 0).then_some(lambda))
}

/// `(α, β) = (kλ, λ(v−1)/(k−1) + kλ − λ)` for a 2-`(v, k, λ)` design.
pub fn two_design_pgd_params(v: i64, k: i64, lambda: i64) -> Result<(i64, i64)> {
    let num = lambda * (v - 1);
    if k <= 1 || num % (k - 1) != 0 {
        return Err(DesignError::NonIntegerBeta { v, k, lambda });
    }
    Ok((k * lambda, num / (k - 1) + k * lambda - lambda))
}

/// Certifies `N Nᵀ N = β N + α (J − N)` for a tactical configuration.
pub fn pgd_certify(s: &IncidenceStructure) -> Result<PgdCertificate> {
    let tp = tactical_params(s)?;
    let n = &s.n;
    let m = n.multiply(&n.transpose())?.multiply(n)?;

    let cells = || (0..s.points()).flat_map(|i| (0..s.blocks()).map(move |j| (i, j)));
    let (fp, fb) = cells()
        .find(|&(i, j)| s.is_flag(i, j))
        .expect("blocks are nonempty, so a flag exists");
    let beta = *m.get(fp, fb);
    let (alpha, kind) = match cells().find(|&(i, j)| !s.is_flag(i, j)) {
        Some((i, j)) => (*m.get(i, j), PgdKind::PartialGeometric),
        None => (beta, PgdKind::DegenerateNoAntiflag),
    };

    for (i, j) in cells() {
        let expected = if s.is_flag(i, j) { beta } else { alpha };
        let found = *m.get(i, j);
        if found != expected {
            return Err(DesignError::NotPartialGeometric {
                point: i,
                block: j,
                expected,
                found,
            });
        }
    }

    Ok(PgdCertificate {
        v: tp.v,
        b: tp.b,
        k: tp.k,
        r: tp.r,
        alpha,
        beta,
        kind,
    })
}

/// Checks that `a` is the adjacency matrix of a simple undirected graph.
pub fn validate_simple_adjacency(a: &IntMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(DesignError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = *a.get(i, j);
            if x != 0 && x != 1 {
                return Err(DesignError::BadEntries {
                    row: i,
                    col: j,
                    value: x,
                });
            }
            if i == j && x != 0 {
                return Err(DesignError::Loop { vertex: i });
            }
            if j > i && x != *a.get(j, i) {
                return Err(DesignError::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Neighbourhood design of a graph: `N = A`, or `N = A + I` when
/// `add_identity` is set.
pub fn adjacency_to_incidence(a: &IntMatrix, add_identity: bool) -> Result<IncidenceStructure> {
    validate_simple_adjacency(a)?;
    let n = if add_identity {
        a.checked_add(&IntMatrix::identity(a.rows()))?
    } else {
        a.clone()
    };
    IncidenceStructure::new(n)
}
