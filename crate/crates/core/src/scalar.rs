//! Scalar abstractions shared by the matrix kernels.
//!
//! Everything in the crate that touches matrix entries is generic over
//! [`Scalar`]. Exact rank decisions additionally require [`ExactScalar`],
//! which is only implemented for types where the fraction-free elimination
//! divides without remainder (machine integers, big integers, rationals).
//! Floating point types can be used for products and powers, and for the
//! SVD based cross-check in [`crate::linalg::numeric_rank`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// A ring element usable as a matrix entry.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + Debug + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type represents small integers")
    }

    /// Lossy conversion used only by floating point cross-checks.
    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + Clone + Debug + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// Marker for scalars whose arithmetic is exact.
///
/// Bareiss elimination divides by the previous pivot; for these types the
/// quotient is exact, so rank and zero tests are decisions rather than
/// estimates.
pub trait ExactScalar: Scalar {}

impl ExactScalar for i64 {}
impl ExactScalar for i128 {}
impl ExactScalar for BigInt {}
impl<T> ExactScalar for Ratio<T>
where
    T: num_integer::Integer + Clone + Debug + Send + Sync,
    Ratio<T>: Scalar,
{
}
