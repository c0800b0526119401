//! Scalar abstraction for exact matrix arithmetic.
//!
//! Every matrix operation in the crate is exact. A [`Scalar`] only has to
//! provide checked ring operations; the bounded primitive integers also
//! report a magnitude so that the matrix product can prove, up front, that
//! no intermediate value can overflow and skip the per-step checks.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};

/// Exact ring element usable as a matrix entry.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// Largest representable magnitude, `None` when the type is not a
    /// bounded primitive integer.
    const MAX_MAGNITUDE: Option<u128>;

    /// `|self|` as an unsigned value, for bounded primitive integers.
    fn magnitude(&self) -> Option<u128>;
}

/// A [`Scalar`] that is also a field (exact division).
pub trait FieldScalar: Scalar + CheckedDiv {}

macro_rules! signed_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const MAX_MAGNITUDE: Option<u128> = Some(<$t>::MAX as u128);

            #[inline]
            fn magnitude(&self) -> Option<u128> {
                Some(self.unsigned_abs() as u128)
            }
        }
    )*};
}

signed_scalar!(i8, i16, i32, i64, i128);

macro_rules! rational_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            const MAX_MAGNITUDE: Option<u128> = None;

            fn magnitude(&self) -> Option<u128> {
                None
            }
        }

        impl FieldScalar for Ratio<$t> {}
    )*};
}

rational_scalar!(i64, i128);
