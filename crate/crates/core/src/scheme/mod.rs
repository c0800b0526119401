//! Symmetric association schemes and their intersection algebra.
//!
//! A scheme is an ordered list of 0/1 adjacency matrices `A_0, …, A_d`.
//! [`scheme_certify`] checks `A_0 = I`, `Σ A_i = J`, `A_iᵀ = A_i` and
//! closure under multiplication; closure is established by computing each
//! product `A_i A_j` and checking it is constant on the support of every
//! `A_h`, which yields the intersection numbers `p_ij^h` as a by-product.

mod eigen;
mod wreath;
mod zfamily;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::design::DesignError;
use crate::linalg::{LinalgError, ParseMatrixError};
use crate::IntMatrix;

pub use eigen::{character_table, is_self_dual, self_dual_ordering, EigenTable};
pub use wreath::{complete_scheme, wreath, wreath_pgd};
pub use zfamily::{z_family_check, z_family_params, z_family_table, ZFamilyOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// All matrices square and of a common size, at least one class.
    Shape,
    /// `A_0 = I`.
    IdentityClass,
    /// Entries 0/1 and `Σ A_i = J`.
    Partition,
    /// Every relation is nonempty.
    NonEmpty,
    /// `A_iᵀ = A_i`.
    Symmetry,
    /// `A_i A_j ∈ span{A_h}`.
    Closure,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Shape => "shape",
            Axiom::IdentityClass => "A_0 = I",
            Axiom::Partition => "sum of A_i = J",
            Axiom::NonEmpty => "nonempty relations",
            Axiom::Symmetry => "A_i symmetric",
            Axiom::Closure => "closure under multiplication",
        };
        f.write_str(s)
    }
}

/// The first failed axiom with the classes and cell that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub classes: Vec<usize>,
    pub cell: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom `{}` fails", self.axiom)?;
        if !self.classes.is_empty() {
            write!(f, " for classes {:?}", self.classes)?;
        }
        if let Some((x, y)) = self.cell {
            write!(f, " at ({x},{y})")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("not an association scheme: {0}")]
    NotAScheme(Box<Violation>),
    #[error("invalid class partition: {0}")]
    InvalidPartition(String),
    #[error("B_{class} has non-integer eigenvalues")]
    NonIntegerEigenvalues { class: usize },
    #[error("eigenspaces could not be separated by the intersection matrices")]
    RepeatedEigenvaluesUnresolved,
    #[error("eigenmatrix inconsistency: {0}")]
    InconsistentEigenmatrix(String),
    #[error("expected a 3-class scheme of order {expected_order}, found {classes} classes on {order} points")]
    OrderMismatch {
        expected_order: usize,
        order: usize,
        classes: usize,
    },
    #[error("size cap exceeded: {size} points requested, cap is {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("relation matrix: {0}")]
    RelationMatrix(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Parse(#[from] ParseMatrixError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = SchemeError> = std::result::Result<T, E>;

fn violation(
    axiom: Axiom,
    classes: Vec<usize>,
    cell: Option<(usize, usize)>,
    detail: impl Into<String>,
) -> SchemeError {
    SchemeError::NotAScheme(Box::new(Violation {
        axiom,
        classes,
        cell,
        detail: detail.into(),
    }))
}

/// A certified symmetric association scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationScheme {
    adjacency: Vec<IntMatrix>,
    /// `relation[x * n + y]` is the class of `(x, y)`.
    relation: Vec<usize>,
    /// `p[i][j][h]`.
    p: Vec<Vec<Vec<i64>>>,
    valencies: Vec<i64>,
}

/// Intersection numbers, intersection matrices and valencies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionData {
    /// `p[i][j][h] = p_ij^h`.
    pub p: Vec<Vec<Vec<i64>>>,
    /// `b[i]` has `(B_i)_{jh} = p_ij^h`.
    pub b: Vec<IntMatrix>,
    pub valencies: Vec<i64>,
}

impl IntersectionData {
    pub fn classes(&self) -> usize {
        self.b.len()
    }
}

impl AssociationScheme {
    /// Number of points `n`.
    pub fn order(&self) -> usize {
        self.adjacency[0].rows()
    }

    /// Number of relations including the diagonal, `d + 1`.
    pub fn classes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[IntMatrix] {
        &self.adjacency
    }

    pub fn valencies(&self) -> &[i64] {
        &self.valencies
    }

    #[inline]
    pub fn class_of(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.order() + y]
    }

    /// `p_ij^h`.
    #[inline]
    pub fn p(&self, i: usize, j: usize, h: usize) -> i64 {
        self.p[i][j][h]
    }

    /// Relation matrix `R = Σ_h h · A_h`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.order();
        IntMatrix::from_fn(n, n, |x, y| self.class_of(x, y) as i64)
    }

    /// Splits a relation matrix with entries in `0..=d` into classes by
    /// value and certifies the result.
    pub fn from_relation_matrix(r: &IntMatrix) -> Result<Self> {
        if !r.is_square() {
            return Err(SchemeError::RelationMatrix(format!(
                "relation matrix is {}x{}, not square",
                r.rows(),
                r.cols()
            )));
        }
        let mut d = 0usize;
        for &x in r.as_slice() {
            let x = usize::try_from(x)
                .map_err(|_| SchemeError::RelationMatrix(format!("negative class index {x}")))?;
            d = d.max(x);
        }
        let n = r.rows();
        let relation: Vec<usize> = r.as_slice().iter().map(|&x| x as usize).collect();
        from_relation(n, d + 1, &relation)
    }

    /// The same scheme with classes renumbered: new class `t` is old class
    /// `order[t]`. `order[0]` must be `0`.
    pub fn relabel(&self, order: &[usize]) -> Result<Self> {
        let c = self.classes();
        let valid = order.len() == c
            && order.first() == Some(&0)
            && order.iter().copied().collect::<BTreeSet<_>>() == (0..c).collect();
        if !valid {
            return Err(SchemeError::InvalidPartition(format!(
                "{order:?} is not a permutation of 0..{c} fixing 0"
            )));
        }
        let mut inverse = vec![0; c];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        Ok(Self {
            adjacency: order.iter().map(|&o| self.adjacency[o].clone()).collect(),
            relation: self.relation.iter().map(|&old| inverse[old]).collect(),
            p: (0..c)
                .map(|i| {
                    (0..c)
                        .map(|j| {
                            (0..c)
                                .map(|h| self.p[order[i]][order[j]][order[h]])
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            valencies: order.iter().map(|&o| self.valencies[o]).collect(),
        })
    }
}

/// Certifies the three scheme axioms for an ordered list of matrices.
pub fn scheme_certify(matrices: Vec<IntMatrix>) -> Result<AssociationScheme> {
    let Some(first) = matrices.first() else {
        return Err(violation(Axiom::Shape, vec![], None, "no classes given"));
    };
    let n = first.rows();
    for (i, a) in matrices.iter().enumerate() {
        if a.shape() != (n, n) {
            return Err(violation(
                Axiom::Shape,
                vec![i],
                None,
                format!("A_{i} is {}x{}, expected {n}x{n}", a.rows(), a.cols()),
            ));
        }
    }
    if n == 0 {
        return Err(violation(Axiom::Shape, vec![], None, "empty point set"));
    }
    if let Some((x, y)) = cells(n).find(|&(x, y)| *matrices[0].get(x, y) != i64::from(x == y)) {
        return Err(violation(Axiom::IdentityClass, vec![0], Some((x, y)), ""));
    }

    let mut relation = vec![usize::MAX; n * n];
    for (i, a) in matrices.iter().enumerate() {
        for (x, y) in cells(n) {
            match *a.get(x, y) {
                0 => {}
                1 if relation[x * n + y] == usize::MAX => relation[x * n + y] = i,
                1 => {
                    return Err(violation(
                        Axiom::Partition,
                        vec![relation[x * n + y], i],
                        Some((x, y)),
                        "cell covered twice",
                    ))
                }
                v => {
                    return Err(violation(
                        Axiom::Partition,
                        vec![i],
                        Some((x, y)),
                        format!("entry {v} is not 0/1"),
                    ))
                }
            }
        }
    }
    if let Some(pos) = relation.iter().position(|&c| c == usize::MAX) {
        return Err(violation(
            Axiom::Partition,
            vec![],
            Some((pos / n, pos % n)),
            "cell not covered by any class",
        ));
    }
    certify_partition(matrices, relation)
}

fn cells(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

/// Builds and certifies a scheme from a class-index array.
pub(crate) fn from_relation(
    n: usize,
    classes: usize,
    relation: &[usize],
) -> Result<AssociationScheme> {
    let adjacency = (0..classes)
        .map(|h| IntMatrix::from_fn(n, n, |x, y| i64::from(relation[x * n + y] == h)))
        .collect();
    scheme_certify(adjacency)
}

#[allow(clippy::needless_range_loop)]
fn certify_partition(adjacency: Vec<IntMatrix>, relation: Vec<usize>) -> Result<AssociationScheme> {
    let n = adjacency[0].rows();
    let c = adjacency.len();

    let mut first_cell = vec![None; c];
    for (pos, &h) in relation.iter().enumerate() {
        first_cell[h].get_or_insert(pos);
    }
    if let Some(h) = first_cell.iter().position(Option::is_none) {
        return Err(violation(
            Axiom::NonEmpty,
            vec![h],
            None,
            format!("A_{h} is zero"),
        ));
    }
    let first_cell: Vec<usize> = first_cell.into_iter().map(Option::unwrap).collect();

    for (i, a) in adjacency.iter().enumerate() {
        if let Some((x, y)) = cells(n).find(|&(x, y)| x < y && a.get(x, y) != a.get(y, x)) {
            return Err(violation(Axiom::Symmetry, vec![i], Some((x, y)), ""));
        }
    }

    let mut p = vec![vec![vec![0i64; c]; c]; c];
    for j in 0..c {
        p[0][j][j] = 1;
        p[j][0][j] = 1;
    }
    for i in 1..c {
        for j in i..c {
            let prod = adjacency[i].multiply(&adjacency[j])?;
            let coeff: Vec<i64> = first_cell.iter().map(|&pos| prod.as_slice()[pos]).collect();
            if let Some(pos) = (0..n * n).find(|&pos| prod.as_slice()[pos] != coeff[relation[pos]])
            {
                let h = relation[pos];
                return Err(violation(
                    Axiom::Closure,
                    vec![i, j, h],
                    Some((pos / n, pos % n)),
                    format!(
                        "(A_{i} A_{j}) takes value {} here but {} elsewhere on A_{h}",
                        prod.as_slice()[pos],
                        coeff[h]
                    ),
                ));
            }
            p[i][j] = coeff.clone();
            p[j][i] = coeff;
        }
    }
    // A_i A_i at the diagonal is the row sum of A_i
    let valencies = (0..c).map(|i| p[i][i][0]).collect();

    Ok(AssociationScheme {
        adjacency,
        relation,
        p,
        valencies,
    })
}

/// Intersection numbers read off the certified products, with the
/// intersection matrices `(B_i)_{jh} = p_ij^h`.
pub fn intersection_data(s: &AssociationScheme) -> IntersectionData {
    let c = s.classes();
    let b = (0..c)
        .map(|i| IntMatrix::from_fn(c, c, |j, h| s.p[i][j][h]))
        .collect();
    IntersectionData {
        p: s.p.clone(),
        b,
        valencies: s.valencies.clone(),
    }
}

/// Merges classes: part `t` of the result is `Σ_{i ∈ part} A_i`.
///
/// The part `{0}` is moved to the front; every other part keeps its
/// position relative to the others.
pub fn fuse(s: &AssociationScheme, partition: &[Vec<usize>]) -> Result<AssociationScheme> {
    let c = s.classes();
    let mut seen = BTreeSet::new();
    for part in partition {
        if part.is_empty() {
            return Err(SchemeError::InvalidPartition("empty part".into()));
        }
        for &i in part {
            if i >= c {
                return Err(SchemeError::InvalidPartition(format!(
                    "class {i} out of range 0..{c}"
                )));
            }
            if !seen.insert(i) {
                return Err(SchemeError::InvalidPartition(format!(
                    "class {i} appears twice"
                )));
            }
        }
    }
    if seen.len() != c {
        return Err(SchemeError::InvalidPartition(format!(
            "parts cover {} of {c} classes",
            seen.len()
        )));
    }
    let zero_part = partition.iter().position(|p| p.contains(&0)).unwrap_or(0);
    if partition[zero_part].len() != 1 {
        return Err(SchemeError::InvalidPartition(
            "class 0 must be a singleton part".into(),
        ));
    }

    let ordered = std::iter::once(&partition[zero_part]).chain(
        partition
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != zero_part)
            .map(|(_, p)| p),
    );
    let mut new_class = vec![0; c];
    for (t, part) in ordered.enumerate() {
        for &i in part {
            new_class[i] = t;
        }
    }
    let n = s.order();
    let relation: Vec<usize> = s.relation.iter().map(|&h| new_class[h]).collect();
    from_relation(n, partition.len(), &relation)
}

/// Coefficients `x` with `M = Σ_h x_h A_h`, if `M` is constant on every
/// class.
pub fn coefficients_in_basis(s: &AssociationScheme, m: &IntMatrix) -> Option<Vec<i64>> {
    let n = s.order();
    if m.shape() != (n, n) {
        return None;
    }
    let mut coeff = vec![None; s.classes()];
    for (pos, &h) in s.relation.iter().enumerate() {
        let v = m.as_slice()[pos];
        match coeff[h] {
            None => coeff[h] = Some(v),
            Some(w) if w != v => return None,
            _ => {}
        }
    }
    coeff.into_iter().collect()
}
