//! Oracles and generators shared by the integration tests.

#![allow(dead_code)]

use pgd_core::graph::{complete_multipartite, cycle_graph, petersen_graph};
use pgd_core::hamming::hamming_graph;
use pgd_core::IntMatrix;
use proptest::prelude::*;

/// Outcome of the partial geometric condition evaluated from its definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgdOracle {
    NotTactical,
    NotPartialGeometric,
    /// `(k, r, α, β)`; `α = β` when there is no antiflag.
    Params(i64, i64, i64, i64),
}

/// Counts `|{(y, C) : y ∈ B, y ∈ C, x ∈ C}|` at every point-block pair by
/// direct enumeration and checks the definition.
pub fn pgd_oracle(n: &IntMatrix) -> PgdOracle {
    let (v, b) = n.shape();
    let inc = |p: usize, c: usize| *n.get(p, c) == 1;
    let ks: Vec<i64> = (0..b)
        .map(|c| (0..v).filter(|&p| inc(p, c)).count() as i64)
        .collect();
    let rs: Vec<i64> = (0..v)
        .map(|p| (0..b).filter(|&c| inc(p, c)).count() as i64)
        .collect();
    if ks.iter().any(|&k| k != ks[0]) || rs.iter().any(|&r| r != rs[0]) {
        return PgdOracle::NotTactical;
    }
    let (mut alpha, mut beta) = (None, None);
    for x in 0..v {
        for blk in 0..b {
            let mut count = 0i64;
            for y in (0..v).filter(|&y| inc(y, blk)) {
                count += (0..b).filter(|&c| inc(y, c) && inc(x, c)).count() as i64;
            }
            let slot = if inc(x, blk) { &mut beta } else { &mut alpha };
            match *slot {
                None => *slot = Some(count),
                Some(c) if c != count => return PgdOracle::NotPartialGeometric,
                _ => {}
            }
        }
    }
    let beta = beta.expect("every block is nonempty");
    PgdOracle::Params(ks[0], rs[0], alpha.unwrap_or(beta), beta)
}

/// Strongly regular parameters from the definition, by counting common
/// neighbours. Conventions: `λ = 0` without edges, `μ = k` without
/// non-adjacent pairs.
pub fn srg_oracle(a: &IntMatrix) -> Option<(i64, i64, i64, i64)> {
    let v = a.rows();
    if v == 0 {
        return None;
    }
    let adj = |x: usize, y: usize| *a.get(x, y) == 1;
    let deg: Vec<i64> = (0..v)
        .map(|x| (0..v).filter(|&y| adj(x, y)).count() as i64)
        .collect();
    if deg.iter().any(|&d| d != deg[0]) {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for x in 0..v {
        for y in (0..v).filter(|&y| y != x) {
            let common = (0..v).filter(|&z| adj(x, z) && adj(z, y)).count() as i64;
            let slot = if adj(x, y) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => return None,
                _ => {}
            }
        }
    }
    Some((v as i64, deg[0], lambda.unwrap_or(0), mu.unwrap_or(deg[0])))
}

/// The strongly regular graphs of the equivalence suite.
pub fn srg_corpus() -> Vec<(&'static str, IntMatrix)> {
    vec![
        ("C5", cycle_graph(5)),
        ("Petersen", petersen_graph()),
        ("C4", cycle_graph(4)),
        ("K33", complete_multipartite(2, 3).unwrap()),
        ("complement of 3K3", complete_multipartite(3, 3).unwrap()),
        ("H(2,4)", hamming_graph(2, 4).unwrap()),
    ]
}

/// Tactical `v × b` incidence matrix: blocks are consecutive windows of
/// length `k` laid end to end around a cycle of `v` points.
pub fn windows(v: usize, b: usize, k: usize) -> IntMatrix {
    IntMatrix::from_fn(v, b, |p, c| i64::from((p + v - (c * k) % v) % v < k))
}

/// Applies a 2×2 switch `[[1,0],[0,1]] → [[0,1],[1,0]]` at rows `(p, q)`
/// and columns `(c, d)` when possible; row and column sums are preserved.
pub fn switch(n: &IntMatrix, p: usize, q: usize, c: usize, d: usize) -> IntMatrix {
    let g = |i, j| *n.get(i, j);
    if p == q || c == d || g(p, c) != 1 || g(q, d) != 1 || g(p, d) != 0 || g(q, c) != 0 {
        return n.clone();
    }
    IntMatrix::from_fn(n.rows(), n.cols(), |i, j| {
        if (i == p && j == c) || (i == q && j == d) {
            0
        } else if (i == p && j == d) || (i == q && j == c) {
            1
        } else {
            g(i, j)
        }
    })
}

/// Random tactical incidence matrices up to 7 × 7, mixed by switches.
pub fn tactical_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=7, 1usize..=7)
        .prop_flat_map(|(v, b)| {
            let ks: Vec<usize> = (1..=v).filter(|&k| (b * k) % v == 0).collect();
            (Just(v), Just(b), proptest::sample::select(ks))
        })
        .prop_flat_map(|(v, b, k)| {
            let moves = proptest::collection::vec((0..v, 0..v, 0..b, 0..b), 0..12);
            (Just(windows(v, b, k)), moves)
        })
        .prop_map(|(mut n, moves)| {
            for (p, q, c, d) in moves {
                n = switch(&n, p, q, c, d);
            }
            n
        })
}

/// Arbitrary 0/1 matrices up to 7 × 7 with no empty column.
pub fn incidence_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=7, 1usize..=7)
        .prop_flat_map(|(v, b)| {
            proptest::collection::vec(0i64..=1, v * b).prop_map(move |d| (v, b, d))
        })
        .prop_map(|(v, b, mut d)| {
            for c in 0..b {
                if (0..v).all(|p| d[p * b + c] == 0) {
                    d[(c % v) * b + c] = 1;
                }
            }
            IntMatrix::new(v, b, d).unwrap()
        })
}

/// Symmetric 0/1 matrices with zero diagonal on up to 7 vertices.
pub fn simple_graph() -> impl Strategy<Value = IntMatrix> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(0i64..=1, n * n).prop_map(move |bits| {
            IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Less => bits[i * n + j],
                std::cmp::Ordering::Greater => bits[j * n + i],
                std::cmp::Ordering::Equal => 0,
            })
        })
    })
}

/// Small integer matrices of a given shape.
pub fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-9i64..=9, rows * cols)
        .prop_map(move |d| IntMatrix::new(rows, cols, d).unwrap())
}
