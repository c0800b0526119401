//! Three-class self-dual schemes of order `3m²` with the `Z` eigenmatrix.
//!
//! A scheme whose first eigenmatrix is
//!
//! ```text
//! 1   m(m−1)   m(m+1)   (m−1)(m+1)
//! 1   m        0        −m−1
//! 1   0        −m       m−1
//! 1   −m       m        −1
//! ```
//!
//! yields symmetric partial geometric designs from `A_1`, `A_2` and
//! `A_3 + I`.

use serde::Serialize;

use super::{character_table, AssociationScheme, Result, SchemeError};
use crate::design::{adjacency_to_incidence, pgd_certify, PgdCertificate, SymmetricParams};
use crate::IntMatrix;

/// The eigenmatrix above for a given `m`.
pub fn z_family_table(m: i64) -> IntMatrix {
    IntMatrix::from_rows(&[
        [1, m * (m - 1), m * (m + 1), (m - 1) * (m + 1)],
        [1, m, 0, -m - 1],
        [1, 0, -m, m - 1],
        [1, -m, m, -1],
    ])
    .expect("rows have equal length")
}

/// Design parameters from `A_1`, `A_2` and `A_3 + I`.
pub fn z_family_params(m: i64) -> [SymmetricParams; 3] {
    let v = 3 * m * m;
    let m2 = m * m;
    [
        SymmetricParams::new(
            v,
            m * (m - 1),
            m2 * (m2 - 3 * m + 2) / 3,
            m2 * (m2 - 3 * m + 5) / 3,
        ),
        SymmetricParams::new(
            v,
            m * (m + 1),
            m2 * (m2 + 3 * m + 2) / 3,
            m2 * (m2 + 3 * m + 5) / 3,
        ),
        SymmetricParams::new(v, m2, m2 * (m2 - 1) / 3, m2 * (m2 + 2) / 3),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZFamilyOutcome {
    pub matches: bool,
    /// `class_order[t]` is the original class playing the role of `A_t`.
    pub class_order: Option<[usize; 4]>,
    /// Certificates of `A_1`, `A_2`, `A_3 + I` under `class_order`.
    pub certificates: Vec<PgdCertificate>,
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [1, 2, 3],
    [2, 1, 3],
    [1, 3, 2],
    [3, 2, 1],
    [2, 3, 1],
    [3, 1, 2],
];

/// Compares the eigenmatrix of `s` with [`z_family_table`] under every
/// relabelling of the classes `1, 2, 3`, and on a match certifies the three
/// designs.
pub fn z_family_check(s: &AssociationScheme, m: i64) -> Result<ZFamilyOutcome> {
    let expected_order = usize::try_from(3 * m * m).unwrap_or(0);
    if s.classes() != 4 || m < 1 || m % 3 != 0 || s.order() != expected_order {
        return Err(SchemeError::OrderMismatch {
            expected_order,
            order: s.order(),
            classes: s.classes().saturating_sub(1),
        });
    }
    let table = character_table(s)?;
    let z = z_family_table(m);
    let mut z_rows: Vec<&[i64]> = z.row_iter().skip(1).collect();
    z_rows.sort();

    for perm in PERMUTATIONS {
        let order = [0, perm[0], perm[1], perm[2]];
        let relabelled: Vec<Vec<i64>> = table
            .p
            .row_iter()
            .map(|row| order.iter().map(|&c| row[c]).collect())
            .collect();
        if relabelled[0].as_slice() != z.row(0) {
            continue;
        }
        let mut rest: Vec<&[i64]> = relabelled[1..].iter().map(Vec::as_slice).collect();
        rest.sort();
        if rest != z_rows {
            continue;
        }
        let a = s.adjacency();
        let certificates = vec![
            pgd_certify(&adjacency_to_incidence(&a[order[1]], false)?)?,
            pgd_certify(&adjacency_to_incidence(&a[order[2]], false)?)?,
            pgd_certify(&adjacency_to_incidence(&a[order[3]], true)?)?,
        ];
        return Ok(ZFamilyOutcome {
            matches: true,
            class_order: Some(order),
            certificates,
        });
    }
    Ok(ZFamilyOutcome {
        matches: false,
        class_order: None,
        certificates: Vec::new(),
    })
}
