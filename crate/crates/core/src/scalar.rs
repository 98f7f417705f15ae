//! Scalar abstraction shared by every geometric computation in the crate.
//!
//! All the constants of the measure are rational, so [`BigRational`] gives
//! exact answers. `f64`/`f32` run the same code paths quickly and are used
//! by the multistart search, where exactness is recovered afterwards.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Field-like number type the geometry is generic over.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic in this type is exact (rationals).
    const EXACT: bool;

    /// `num / den`.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer fits scalar") / Self::from_i64(den).expect("integer fits scalar")
    }

    /// `base^(-exp)`.
    fn inv_pow(base: u32, exp: u32) -> Self {
        let b = Self::from_u32(base).expect("integer fits scalar");
        Self::one() / num_traits::pow(b, exp as usize)
    }

    fn from_u64_lossy(n: u64) -> Self {
        Self::from_u64(n).expect("integer fits scalar")
    }

    /// Converts a double; exact for rationals, identity for `f64`.
    fn from_f64_value(x: f64) -> Option<Self> {
        Self::from_f64(x)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
}

impl Scalar for f32 {
    const EXACT: bool = false;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn inv_pow(base: u32, exp: u32) -> Self {
        BigRational::new(BigInt::from(1), num_traits::pow(BigInt::from(base), exp as usize))
    }
}

/// Converts between scalar types by way of `f64` (lossy unless the target is
/// exact and the source value is a double).
pub fn convert<A: Scalar, B: Scalar>(a: &A) -> B {
    B::from_f64_value(a.to_f64_lossy()).expect("finite value")
}
