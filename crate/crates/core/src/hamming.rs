//! Hamming schemes `H(d, q)` and their mod-3 distance fusions.
//!
//! Points are the `q^d` words over `0..q` in lexicographic order, so word
//! `(x_1, …, x_d)` has index `Σ x_i q^(d−i)`. Class `i` of `H(d, q)` is
//! Hamming distance `i`. For `d = 2l + 1` and `q = 3`, merging distances by
//! residue mod 3 gives a 3-class scheme whose relations have valencies
//! `3^{2l} + (−1)^l 3^l`, `3^{2l} − (−1)^l 3^l` and `3^{2l} − 1`.

use serde::Serialize;

use crate::design::SymmetricParams;
use crate::scheme::{self, AssociationScheme, SchemeError};
use crate::{IntMatrix, DEFAULT_SIZE_CAP};

/// A word of length `d` over the alphabet `0..q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HammingPoint {
    pub word: Vec<u32>,
}

impl HammingPoint {
    pub fn distance(&self, other: &Self) -> usize {
        self.word
            .iter()
            .zip(&other.word)
            .filter(|(a, b)| a != b)
            .count()
    }
}

fn checked_size(d: u32, q: u32, cap: usize) -> Result<usize, SchemeError> {
    let size = usize::try_from(q)
        .ok()
        .and_then(|q| q.checked_pow(d))
        .unwrap_or(usize::MAX);
    if size > cap {
        return Err(SchemeError::SizeCap { size, cap });
    }
    Ok(size)
}

/// All `q^d` words in lexicographic order.
pub fn hamming_points(d: u32, q: u32) -> Vec<HammingPoint> {
    let size = (q as usize).pow(d);
    (0..size)
        .map(|mut idx| {
            let mut word = vec![0; d as usize];
            for slot in word.iter_mut().rev() {
                *slot = (idx % q as usize) as u32;
                idx /= q as usize;
            }
            HammingPoint { word }
        })
        .collect()
}

/// `relation[x·N + y] = f(δ(x, y))` over the lexicographic point order.
fn distance_relation(d: u32, q: u32, class_of_distance: impl Fn(usize) -> usize) -> Vec<usize> {
    let points = hamming_points(d, q);
    let n = points.len();
    let mut relation = Vec::with_capacity(n * n);
    for x in &points {
        for y in &points {
            relation.push(class_of_distance(x.distance(y)));
        }
    }
    relation
}

fn validate(d: u32, q: u32) -> Result<(), SchemeError> {
    if d == 0 || q < 2 {
        return Err(SchemeError::InvalidPartition(format!(
            "Hamming scheme needs d >= 1 and q >= 2 (got d = {d}, q = {q})"
        )));
    }
    Ok(())
}

/// `H(d, q)` with the default size cap.
pub fn hamming_scheme(d: u32, q: u32) -> Result<AssociationScheme, SchemeError> {
    hamming_scheme_with_cap(d, q, DEFAULT_SIZE_CAP)
}

pub fn hamming_scheme_with_cap(
    d: u32,
    q: u32,
    cap: usize,
) -> Result<AssociationScheme, SchemeError> {
    validate(d, q)?;
    let n = checked_size(d, q, cap)?;
    let relation = distance_relation(d, q, |dist| dist);
    scheme::from_relation(n, d as usize + 1, &relation)
}

/// Adjacency matrix of the Hamming graph (distance 1).
pub fn hamming_graph(d: u32, q: u32) -> Result<IntMatrix, SchemeError> {
    validate(d, q)?;
    let n = checked_size(d, q, DEFAULT_SIZE_CAP)?;
    let points = hamming_points(d, q);
    Ok(IntMatrix::from_fn(n, n, |x, y| {
        i64::from(points[x].distance(&points[y]) == 1)
    }))
}

/// Fusion class of a nonzero distance: residues 1 and 2 mod 3 give classes
/// 1 and 2, multiples of 3 give class 3.
pub fn ksd_class(distance: usize) -> usize {
    if distance == 0 {
        0
    } else {
        (distance + 2) % 3 + 1
    }
}

/// The mod-3 fusion of `H(2l + 1, 3)` with the default size cap.
pub fn ksd_scheme(l: u32) -> Result<AssociationScheme, SchemeError> {
    ksd_scheme_with_cap(l, DEFAULT_SIZE_CAP)
}

pub fn ksd_scheme_with_cap(l: u32, cap: usize) -> Result<AssociationScheme, SchemeError> {
    if l == 0 {
        return Err(SchemeError::InvalidPartition(
            "KSD scheme needs l >= 1".into(),
        ));
    }
    let d = 2 * l + 1;
    let n = checked_size(d, 3, cap)?;
    let relation = distance_relation(d, 3, ksd_class);
    scheme::from_relation(n, 4, &relation)
}

/// The fusion partition `{0}, {1,4,7,…}, {2,5,…}, {3,6,…}` of `H(d, 3)`.
pub fn ksd_partition(d: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![vec![0], vec![], vec![], vec![]];
    for dist in 1..=d {
        parts[ksd_class(dist)].push(dist);
    }
    parts.retain(|p| !p.is_empty());
    parts
}

/// Closed-form intersection matrices `B_1, B_2, B_3` of the KSD scheme.
pub fn ksd_predicted_b(l: u32) -> [IntMatrix; 3] {
    let s: i64 = if l.is_multiple_of(2) { 1 } else { -1 };
    let p = |e: u32| 3i64.pow(e);
    let a = p(2 * l - 1);
    let b = p(l - 1);
    let c = p(l);
    let top = p(2 * l);
    let m = |rows: [[i64; 4]; 4]| IntMatrix::from_rows(&rows).expect("4x4");
    [
        m([
            [0, 1, 0, 0],
            [top + s * c, a + 2 * s * b, a + s * b, a + s * c],
            [0, a - s * b, a + s * b, a],
            [0, a + 2 * s * b - 1, a + s * b, a],
        ]),
        m([
            [0, 0, 1, 0],
            [0, a - s * b, a + s * b, a],
            [top - s * c, a - s * b, a - 2 * s * b, a - s * c],
            [0, a - s * b, a - 2 * s * b - 1, a],
        ]),
        m([
            [0, 0, 0, 1],
            [0, a + 2 * s * b - 1, a + s * b, a],
            [0, a - s * b, a - 2 * s * b - 1, a],
            [top - 1, a - s * b, a + s * b, a - 2],
        ]),
    ]
}

/// Parameters of the designs from `A_1`, `A_2` and `A_3 + I` of the KSD
/// scheme on `3^{2l+1}` points.
pub fn cor55_params(l: u32) -> [SymmetricParams; 3] {
    let s: i64 = if l.is_multiple_of(2) { 1 } else { -1 };
    let p = |e: u32| 3i64.pow(e);
    let v = p(2 * l + 1);
    let top = p(2 * l);
    let big = p(4 * l - 1);
    let cube = p(3 * l);
    let small = p(2 * l - 1);
    [
        SymmetricParams::new(
            v,
            top + s * p(l),
            big + s * cube + 2 * small,
            big + s * cube + 5 * small,
        ),
        SymmetricParams::new(
            v,
            top - s * p(l),
            big - s * cube + 2 * small,
            big - s * cube + 5 * small,
        ),
        SymmetricParams::new(v, top, big - small, big + 2 * small),
    ]
}
