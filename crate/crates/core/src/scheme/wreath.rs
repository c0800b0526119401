//! Wreath products of schemes.
//!
//! For an inner scheme `A_0, …, A_d` on `m` points and an outer scheme
//! `C_0, …, C_e` on `n` points the wreath product on `mn` points has
//! classes `I_n ⊗ A_0, …, I_n ⊗ A_d, C_1 ⊗ J_m, …, C_e ⊗ J_m`.

use super::{from_relation, AssociationScheme, Result, SchemeError};
use crate::design::SymmetricParams;

/// Wreath product with `inner` on the blocks and `outer` between blocks.
///
/// Point `(a, x)` with `a` an outer and `x` an inner point has index
/// `a·m + x`, matching the Kronecker block layout.
pub fn wreath(inner: &AssociationScheme, outer: &AssociationScheme) -> Result<AssociationScheme> {
    let m = inner.order();
    let n = outer.order();
    let d = inner.classes() - 1;
    let size = m * n;
    let mut relation = Vec::with_capacity(size * size);
    for a in 0..n {
        for x in 0..m {
            for b in 0..n {
                for y in 0..m {
                    relation.push(if a == b {
                        inner.class_of(x, y)
                    } else {
                        d + outer.class_of(a, b)
                    });
                }
            }
        }
    }
    from_relation(size, d + outer.classes(), &relation)
}

/// The 1-class scheme `{I_n, J_n − I_n}`; for `n = 1` only the diagonal
/// class remains.
pub fn complete_scheme(n: usize) -> Result<AssociationScheme> {
    if n == 0 {
        return Err(SchemeError::InvalidPartition(
            "complete scheme needs n >= 1".into(),
        ));
    }
    let relation: Vec<usize> = (0..n * n)
        .map(|pos| usize::from(pos / n != pos % n))
        .collect();
    from_relation(n, if n == 1 { 1 } else { 2 }, &relation)
}

/// Parameters of the design given by the last wreath class
/// `(J_n − I_n) ⊗ J_m`: `(mn, m(n−1); m²(n²−3n+2), m²(n²−3n+3))`.
pub fn wreath_pgd(m: i64, n: i64) -> SymmetricParams {
    SymmetricParams::new(
        m * n,
        m * (n - 1),
        m * m * (n * n - 3 * n + 2),
        m * m * (n * n - 3 * n + 3),
    )
}
