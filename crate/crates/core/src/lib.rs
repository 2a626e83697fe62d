//! Symbolic dynamics and plane geometry of the Lozi family
//! `(x, y) ↦ (1 - a|x| + b y, x)`.
//!
//! The numerical core is generic over the scalar type: piecewise-affine
//! computations accept any [`Scalar`] (including exact rationals), and
//! evaluations needing roots or logarithms accept any [`Real`]. Concrete
//! `f64` aliases are provided below for everyday use.

pub mod derivatives;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod io;
pub mod pruning;
pub mod scalar;
pub mod symbolic;
pub mod tent;
pub mod verify;

pub use error::{LoziError, Result};
pub use interval::Interval;
pub use pruning::{BoundedValue, Params, Raster, Verdict};
pub use scalar::{ratio, Real, Scalar};
pub use symbolic::{BSign, Symbol, Word};

pub type Rational = num_rational::BigRational;

pub type Params64 = Params<f64>;
pub type Interval64 = Interval<f64>;
pub type Bounded64 = BoundedValue<f64>;
