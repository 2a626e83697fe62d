//! Scalar abstractions.
//!
//! Everything that only needs field arithmetic and an order (the tent map,
//! the Lozi map itself, Lyapunov differences, symbol-sign decisions) is
//! written against [`Scalar`], so it runs unchanged on `f32`, `f64` and
//! exact [`BigRational`](num_rational::BigRational). Anything that needs a
//! square root or transcendental functions is written against [`Real`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Ordered field element. Implemented for `f32`, `f64` and `BigRational`.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("finite value")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for BigRational {}

/// Floating scalar used where square roots and logarithms are needed.
pub trait Real: Scalar + Float + Copy {
    /// Machine epsilon, used for rounding allowances.
    fn eps() -> Self {
        <Self as Float>::epsilon()
    }

    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact rational from a decimal-free ratio, e.g. `ratio(17, 10)` = 1.7.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
