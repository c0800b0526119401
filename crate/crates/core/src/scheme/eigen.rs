//! First and second eigenmatrices.
//!
//! Row `i` of `P` is `(p_0(i), …, p_d(i))`, the eigenvalues of `A_0, …, A_d`
//! on the idempotent `E_i`. Because `A_j A_l = Σ_h p_jl^h A_h`, that row is
//! a common right eigenvector of every intersection matrix `B_j` with
//! eigenvalue `p_j(i)`. The rows are found by splitting the whole space into
//! eigenspaces of `B_1`, then splitting each piece by `B_2`, and so on, using
//! exact rational elimination with integer eigenvalue candidates in
//! `[−k_j, k_j]`.

use serde::Serialize;

use super::{intersection_data, AssociationScheme, Result, SchemeError};
use crate::linalg::elim::{inverse, nullspace};
use crate::{IntMatrix, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenTable {
    /// `p[i][j] = p_j(i)`; row 0 is the valency row, the rest are sorted
    /// lexicographically in decreasing order.
    pub p: IntMatrix,
    /// `Q = n P⁻¹`, rows indexed by classes, columns by idempotents.
    /// Serialized as rows of `"a"` or `"a/b"` strings.
    #[serde(serialize_with = "rational_rows")]
    pub q: RatMatrix,
    /// `m_i = rank E_i`.
    pub multiplicities: Vec<i64>,
}

fn rational_rows<S: serde::Serializer>(q: &RatMatrix, ser: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = q
        .row_iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    rows.serialize(ser)
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(i128::from(x))
}

/// Computes `P`, `Q` and the multiplicities of a certified scheme.
#[allow(clippy::needless_range_loop)]
pub fn character_table(s: &AssociationScheme) -> Result<EigenTable> {
    let data = intersection_data(s);
    let c = s.classes();
    let b: Vec<RatMatrix> = data.b.iter().map(|m| m.map(|&x| rat(x))).collect();

    // each subspace is a list of basis vectors of length c
    let mut spaces: Vec<Vec<Vec<Rational>>> = vec![(0..c)
        .map(|i| (0..c).map(|j| rat(i64::from(i == j))).collect())
        .collect()];
    for j in 1..c {
        let kj = data.valencies[j];
        let mut next = Vec::new();
        for w in &spaces {
            let dim = w.len();
            if dim == 1 {
                next.push(w.clone());
                continue;
            }
            let wm = RatMatrix::from_fn(c, dim, |r, col| w[col][r]);
            let bw = b[j].multiply(&wm)?;
            let mut found = 0;
            for theta in -kj..=kj {
                let shifted = bw.checked_sub(&wm.scale(&rat(theta))?)?;
                let ys = nullspace(&shifted)?;
                found += ys.len();
                if !ys.is_empty() {
                    next.push(
                        ys.iter()
                            .map(|y| {
                                (0..c)
                                    .map(|r| (0..dim).fold(rat(0), |acc, t| acc + w[t][r] * y[t]))
                                    .collect()
                            })
                            .collect(),
                    );
                }
            }
            if found != dim {
                return Err(SchemeError::NonIntegerEigenvalues { class: j });
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|w| w.len() != 1) {
        return Err(SchemeError::RepeatedEigenvaluesUnresolved);
    }

    let mut rows = Vec::with_capacity(c);
    for w in spaces {
        let v = &w[0];
        let lead = v[0];
        if lead == rat(0) {
            return Err(SchemeError::InconsistentEigenmatrix(
                "eigenvector with zero first coordinate".into(),
            ));
        }
        let mut row = Vec::with_capacity(c);
        for x in v {
            let y = *x / lead;
            if !y.is_integer() {
                return Err(SchemeError::NonIntegerEigenvalues { class: 0 });
            }
            row.push(i64::try_from(y.to_integer()).map_err(|_| {
                SchemeError::InconsistentEigenmatrix("eigenvalue out of range".into())
            })?);
        }
        rows.push(row);
    }
    let trivial = rows
        .iter()
        .position(|r| r.as_slice() == data.valencies.as_slice())
        .ok_or_else(|| SchemeError::InconsistentEigenmatrix("no valency row".into()))?;
    let first = rows.remove(trivial);
    rows.sort_by(|a, b| b.cmp(a));
    rows.insert(0, first);
    let p = IntMatrix::from_rows(&rows)?;

    let n = s.order() as i64;
    let q = inverse(&p.map(|&x| rat(x)))?.scale(&rat(n))?;

    let mut multiplicities = Vec::with_capacity(c);
    for row in &rows {
        let norm = row
            .iter()
            .zip(&data.valencies)
            .fold(rat(0), |acc, (&x, &k)| acc + rat(x) * rat(x) / rat(k));
        let m = rat(n) / norm;
        if !m.is_integer() {
            return Err(SchemeError::InconsistentEigenmatrix(format!(
                "multiplicity {m} is not an integer"
            )));
        }
        multiplicities.push(m.to_integer() as i64);
    }
    for (i, &m) in multiplicities.iter().enumerate() {
        if *q.get(0, i) != rat(m) {
            return Err(SchemeError::InconsistentEigenmatrix(format!(
                "Q[0][{i}] = {} but m_{i} = {m}",
                q.get(0, i)
            )));
        }
    }
    Ok(EigenTable {
        p,
        q,
        multiplicities,
    })
}

/// Some ordering of the idempotents under which `P = Q`, if one exists.
///
/// The result `σ` lists idempotent rows of `P`: with `E'_i = E_{σ(i)}` the
/// reordered eigenmatrices coincide, i.e. `P[σ(i)][c] = Q[i][σ(c)]`.
pub fn self_dual_ordering(t: &EigenTable) -> Option<Vec<usize>> {
    let c = t.p.rows();
    let p = t.p.map(|&x| rat(x));
    let mut sigma = vec![usize::MAX; c];
    let mut used = vec![false; c];
    sigma[0] = 0;
    used[0] = true;
    if !consistent(&p, &t.q, &sigma, 0) {
        return None;
    }
    if search(&p, &t.q, &mut sigma, &mut used, 1) {
        Some(sigma)
    } else {
        None
    }
}

pub fn is_self_dual(t: &EigenTable) -> bool {
    self_dual_ordering(t).is_some()
}

/// Checks every constraint whose two indices are already assigned, given
/// that index `i` was just assigned.
fn consistent(p: &RatMatrix, q: &RatMatrix, sigma: &[usize], i: usize) -> bool {
    (0..sigma.len())
        .filter(|&c| sigma[c] != usize::MAX)
        .all(|c| {
            p.get(sigma[i], c) == q.get(i, sigma[c]) && p.get(sigma[c], i) == q.get(c, sigma[i])
        })
}

fn search(p: &RatMatrix, q: &RatMatrix, sigma: &mut [usize], used: &mut [bool], i: usize) -> bool {
    if i == sigma.len() {
        return true;
    }
    for r in 1..sigma.len() {
        if used[r] {
            continue;
        }
        sigma[i] = r;
        used[r] = true;
        if consistent(p, q, sigma, i) && search(p, q, sigma, used, i + 1) {
            return true;
        }
        used[r] = false;
        sigma[i] = usize::MAX;
    }
    false
}
