//! Exact constructions and certificates for partial geometric designs.
//!
//! The crate builds strongly regular graphs, symmetric association schemes
//! (Hamming schemes, their mod-3 distance fusions, wreath products), linear
//! codes over prime fields with their orthogonal arrays, and the flag and
//! antiflag digraphs of incidence structures. Every claim is checked by an
//! exact matrix identity:
//!
//! * partial geometric designs: `JN = kJ`, `NJ = rJ`,
//!   `N Nᵀ N = β N + α (J − N)` ([`design::pgd_certify`]);
//! * strongly regular graphs: `A² = kI + λA + μ(J − I − A)`
//!   ([`graph::srg_certify`]);
//! * association schemes: `A_i A_j = Σ_h p_ij^h A_h`
//!   ([`scheme::scheme_certify`]);
//! * directed strongly regular graphs: `AJ = JA = kJ`,
//!   `A² = tI + λ′A + μ′(J − I − A)` ([`dsrg::dsrg_certify`]).
//!
//! Matrices are generic over an exact [`Scalar`]; the aliases below fix the
//! two instantiations the crate actually uses.

pub mod code;
pub mod design;
pub mod dsrg;
pub mod graph;
pub mod hamming;
pub mod linalg;
pub mod scalar;
pub mod scheme;

pub use linalg::{LinalgError, Matrix};
pub use scalar::{FieldScalar, Scalar};

/// Checked 64-bit integer matrix: adjacency, incidence and relation matrices.
pub type IntMatrix = Matrix<i64>;

/// Exact rational used for second eigenmatrices.
pub type Rational = num_rational::Ratio<i128>;

/// Rational matrix used by eigenvector solving and inversion.
pub type RatMatrix = Matrix<Rational>;

/// Default cap on the number of points built by enumerating constructions
/// (`3^7`).
pub const DEFAULT_SIZE_CAP: usize = 2187;
