//! Flag and antiflag digraphs of incidence structures and directed strongly
//! regular graph certification.
//!
//! A loopless digraph with adjacency `A` is a DSRG with parameters
//! `(v, k, t, λ′, μ′)` when `AJ = JA = kJ` and
//! `A² = tI + λ′A + μ′(J − I − A)`. A symmetric partial geometric design
//! `(v, k; α, β)` yields two of them: the digraph on its flags and the
//! digraph on its antiflags, with parameters given by
//! [`predicted_dsrg_params`].

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::design::{DesignError, IncidenceStructure, SymmetricParams};
use crate::linalg::LinalgError;
use crate::IntMatrix;

/// Largest flag or antiflag digraph built without an explicit override.
pub const DSRG_SIZE_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DsrgError {
    #[error("entry ({row},{col}) = {value} is not 0/1")]
    BadEntries { row: usize, col: usize, value: i64 },
    #[error("adjacency matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("the structure has no {0}s, so the digraph has no vertices")]
    EmptyVertexSet(Source),
    #[error("digraph would have {size} vertices, above the cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("not a directed strongly regular graph: {0}")]
    NotDsrg(DsrgViolation),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = DsrgError> = std::result::Result<T, E>;

/// Which vertex set a digraph was built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Flag,
    Antiflag,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Flag => "flag",
            Source::Antiflag => "antiflag",
        })
    }
}

/// Loopless digraph given by a square 0/1 adjacency matrix.
///
/// Digraphs built from an incidence structure also carry their vertex labels
/// `(point, block)` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    adjacency: IntMatrix,
    labels: Option<Vec<(usize, usize)>>,
    source: Option<Source>,
}

impl Digraph {
    pub fn new(adjacency: IntMatrix) -> Result<Self> {
        let (rows, cols) = adjacency.shape();
        if rows != cols {
            return Err(DsrgError::NotSquare { rows, cols });
        }
        for (i, row) in adjacency.row_iter().enumerate() {
            if let Some((j, &value)) = row.iter().enumerate().find(|(_, &x)| x != 0 && x != 1) {
                return Err(DsrgError::BadEntries {
                    row: i,
                    col: j,
                    value,
                });
            }
            if row[i] != 0 {
                return Err(DsrgError::Loop { vertex: i });
            }
        }
        Ok(Self {
            adjacency,
            labels: None,
            source: None,
        })
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn order(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn labels(&self) -> Option<&[(usize, usize)]> {
        self.labels.as_deref()
    }

    pub fn source(&self) -> Option<Source> {
        self.source
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        *self.adjacency.get(from, to) == 1
    }
}

/// Parameters `(v, k, t, λ′, μ′)` of a directed strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DsrgParams {
    pub v: i64,
    pub k: i64,
    pub t: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl DsrgParams {
    pub const fn new(v: i64, k: i64, t: i64, lambda: i64, mu: i64) -> Self {
        Self {
            v,
            k,
            t,
            lambda,
            mu,
        }
    }
}

impl fmt::Display for DsrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.v, self.k, self.t, self.lambda, self.mu
        )
    }
}

/// Parameters witnessed by an adjacency matrix, with the vertex set they came
/// from when known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DsrgCertificate {
    #[serde(flatten)]
    pub params: DsrgParams,
    pub source: Option<Source>,
}

/// First place where the DSRG identities fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DsrgViolation {
    Empty,
    OutDegree {
        vertex: usize,
        expected: i64,
        found: i64,
    },
    InDegree {
        vertex: usize,
        expected: i64,
        found: i64,
    },
    PathCount {
        from: usize,
        to: usize,
        arc: bool,
        expected: i64,
        found: i64,
    },
}

impl fmt::Display for DsrgViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DsrgViolation::Empty => f.write_str("digraph has no vertices"),
            DsrgViolation::OutDegree {
                vertex,
                expected,
                found,
            } => {
                write!(
                    f,
                    "vertex {vertex} has out-degree {found}, expected {expected}"
                )
            }
            DsrgViolation::InDegree {
                vertex,
                expected,
                found,
            } => {
                write!(
                    f,
                    "vertex {vertex} has in-degree {found}, expected {expected}"
                )
            }
            DsrgViolation::PathCount {
                from,
                to,
                arc,
                expected,
                found,
            } => {
                let kind = if from == to {
                    "closed"
                } else if arc {
                    "arc"
                } else {
                    "non-arc"
                };
                write!(
                    f,
                    "{found} paths of length 2 from {from} to {to} ({kind}), expected {expected}"
                )
            }
        }
    }
}

fn vertex_labels(d: &IncidenceStructure, flags: bool, cap: usize) -> Result<Vec<(usize, usize)>> {
    let source = if flags {
        Source::Flag
    } else {
        Source::Antiflag
    };
    let count = d
        .matrix()
        .row_iter()
        .flatten()
        .filter(|&&x| (x == 1) == flags)
        .count();
    if count == 0 {
        return Err(DsrgError::EmptyVertexSet(source));
    }
    if count > cap {
        return Err(DsrgError::SizeCap { size: count, cap });
    }
    let mut labels = Vec::with_capacity(count);
    for p in 0..d.points() {
        for b in 0..d.blocks() {
            if d.is_flag(p, b) == flags {
                labels.push((p, b));
            }
        }
    }
    Ok(labels)
}

fn labelled(
    source: Source,
    labels: Vec<(usize, usize)>,
    arc: impl Fn(usize, usize) -> bool,
) -> Digraph {
    let n = labels.len();
    let adjacency = IntMatrix::from_fn(n, n, |i, j| i64::from(arc(i, j)));
    Digraph {
        adjacency,
        labels: Some(labels),
        source: Some(source),
    }
}

/// Digraph on the flags `(p, B)`, `p ∈ B`, with an arc `(p, B) → (q, C)`
/// whenever the flags differ and `p ∈ C`.
pub fn flag_graph(d: &IncidenceStructure) -> Result<Digraph> {
    flag_graph_with_cap(d, DSRG_SIZE_CAP)
}

pub fn flag_graph_with_cap(d: &IncidenceStructure, cap: usize) -> Result<Digraph> {
    let labels = vertex_labels(d, true, cap)?;
    Ok(labelled(Source::Flag, labels.clone(), |i, j| {
        i != j && d.is_flag(labels[i].0, labels[j].1)
    }))
}

/// Digraph on the antiflags `(p, B)`, `p ∉ B`, with an arc
/// `(p, B) → (q, C)` whenever `p ∈ C`.
pub fn antiflag_graph(d: &IncidenceStructure) -> Result<Digraph> {
    antiflag_graph_with_cap(d, DSRG_SIZE_CAP)
}

pub fn antiflag_graph_with_cap(d: &IncidenceStructure, cap: usize) -> Result<Digraph> {
    let labels = vertex_labels(d, false, cap)?;
    Ok(labelled(Source::Antiflag, labels.clone(), |i, j| {
        d.is_flag(labels[i].0, labels[j].1)
    }))
}

/// Parameters of `g` if `AJ = JA = kJ` and `A² = tI + λ′A + μ′(J − I − A)`
/// hold exactly; otherwise the first violation found.
///
/// With no arcs between distinct non-adjacent vertices the unconstrained
/// `μ′` is reported as 0, and likewise `λ′` when there are no arcs.
pub fn dsrg_certify(g: &Digraph) -> Result<DsrgCertificate> {
    let a = &g.adjacency;
    let v = a.rows();
    if v == 0 {
        return Err(DsrgError::NotDsrg(DsrgViolation::Empty));
    }
    let out = a.row_sums()?;
    let k = out[0];
    if let Some(vertex) = out.iter().position(|&d| d != k) {
        return Err(DsrgError::NotDsrg(DsrgViolation::OutDegree {
            vertex,
            expected: k,
            found: out[vertex],
        }));
    }
    let inn = a.col_sums()?;
    if let Some(vertex) = inn.iter().position(|&d| d != k) {
        return Err(DsrgError::NotDsrg(DsrgViolation::InDegree {
            vertex,
            expected: k,
            found: inn[vertex],
        }));
    }
    let sq = a.multiply(a)?;
    let (mut t, mut lambda, mut mu) = (None, None, None);
    for i in 0..v {
        for j in 0..v {
            let found = *sq.get(i, j);
            let arc = *a.get(i, j) == 1;
            let slot = if i == j {
                &mut t
            } else if arc {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(found),
                Some(expected) if expected != found => {
                    return Err(DsrgError::NotDsrg(DsrgViolation::PathCount {
                        from: i,
                        to: j,
                        arc,
                        expected,
                        found,
                    }));
                }
                _ => {}
            }
        }
    }
    Ok(DsrgCertificate {
        params: DsrgParams {
            v: v as i64,
            k,
            t: t.unwrap_or(0),
            lambda: lambda.unwrap_or(0),
            mu: mu.unwrap_or(0),
        },
        source: g.source,
    })
}

/// The parameters of the antiflag and flag digraphs of a symmetric partial
/// geometric design `(v, k; α, β)`, in that order:
/// `(v(v − k), k(v − k), k² − α, k² − β, k² − α)` and
/// `(vk, k² − 1, β − 1, β − 2, α)`.
pub fn predicted_dsrg_params(p: SymmetricParams) -> [DsrgParams; 2] {
    let SymmetricParams { v, k, alpha, beta } = p;
    let k2 = k * k;
    [
        DsrgParams::new(v * (v - k), k * (v - k), k2 - alpha, k2 - beta, k2 - alpha),
        DsrgParams::new(v * k, k2 - 1, beta - 1, beta - 2, alpha),
    ]
}

/// One row of the catalog of digraphs from the three-class family with
/// `m = 3^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub l: u32,
    pub m: i64,
    /// Index of the design in the family (1, 2 or 3).
    pub design: usize,
    pub source: Source,
    #[serde(flatten)]
    pub params: DsrgParams,
}

/// For each `l` in `1..=l_max`, six closed-form rows at `m = 3^l`: the
/// antiflag then flag digraph of each of the three family designs
/// `(3m², m(m ∓ 1); ...)` and `(3m², m²; ...)`.
pub fn table1_catalog(l_max: u32) -> Vec<CatalogRow> {
    let mut out = Vec::new();
    for l in 1..=l_max {
        let m = 3i64.pow(l);
        let m2 = m * m;
        let rows = [
            DsrgParams::new(
                3 * m * m2 * (2 * m + 1),
                m2 * (m - 1) * (2 * m + 1),
                m2 * (2 * m2 - 3 * m + 1) / 3,
                m2 * (2 * m2 - 3 * m - 2) / 3,
                m2 * (2 * m2 - 3 * m + 1) / 3,
            ),
            DsrgParams::new(
                3 * m * m2 * (m - 1),
                m2 * (m - 1) * (m - 1) - 1,
                m2 * (m2 - 3 * m + 5) / 3 - 1,
                m2 * (m2 - 3 * m + 5) / 3 - 2,
                m2 * (m2 - 3 * m + 2) / 3,
            ),
            DsrgParams::new(
                3 * m * m2 * (2 * m - 1),
                m2 * (m + 1) * (2 * m - 1),
                m2 * (2 * m2 + 3 * m + 1) / 3,
                m2 * (2 * m2 + 3 * m - 2) / 3,
                m2 * (2 * m2 + 3 * m + 1) / 3,
            ),
            DsrgParams::new(
                3 * m * m2 * (m + 1),
                m2 * (m + 1) * (m + 1) - 1,
                m2 * (m2 + 3 * m + 5) / 3 - 1,
                m2 * (m2 + 3 * m + 5) / 3 - 2,
                m2 * (m2 + 3 * m + 2) / 3,
            ),
            DsrgParams::new(
                6 * m2 * m2,
                2 * m2 * m2,
                m2 * (2 * m2 + 1) / 3,
                2 * m2 * (m2 - 1) / 3,
                m2 * (2 * m2 + 1) / 3,
            ),
            DsrgParams::new(
                3 * m2 * m2,
                m2 * m2 - 1,
                m2 * (m2 + 2) / 3 - 1,
                m2 * (m2 + 2) / 3 - 2,
                m2 * (m2 - 1) / 3,
            ),
        ];
        for (i, params) in rows.into_iter().enumerate() {
            out.push(CatalogRow {
                l,
                m,
                design: i / 2 + 1,
                source: if i % 2 == 0 {
                    Source::Antiflag
                } else {
                    Source::Flag
                },
                params,
            });
        }
    }
    out
}
