//! Closed real intervals with plain (round-to-nearest) arithmetic.
//!
//! Used to enclose the pruning functions over whole cylinders. Rounding is
//! not directed; enclosures are sound up to floating-point rounding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn point(v: T) -> Self {
        Self { lo: v, hi: v }
    }

    /// `[-r, r]`.
    pub fn symmetric(r: T) -> Self {
        Self { lo: -r, hi: r }
    }

    pub fn around(center: T, radius: T) -> Self {
        Self::new(center - radius, center + radius)
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn mid(&self) -> T {
        self.lo + (self.hi - self.lo) * T::half()
    }

    pub fn rad(&self) -> T {
        (self.hi - self.lo) * T::half()
    }

    pub fn contains(&self, v: T) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(T::zero())
    }

    pub fn scale(&self, k: T) -> Self {
        if k >= T::zero() {
            Self::new(self.lo * k, self.hi * k)
        } else {
            Self::new(self.hi * k, self.lo * k)
        }
    }

    pub fn shift(&self, k: T) -> Self {
        Self::new(self.lo + k, self.hi + k)
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.lo > T::zero() || self.hi < T::zero() {
            Some(Self::new(T::one() / self.hi, T::one() / self.lo))
        } else {
            None
        }
    }

    /// Intersection; `None` when disjoint.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }
}

impl<T: Real> Add for Interval<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl<T: Real> Sub for Interval<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl<T: Real> Neg for Interval<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl<T: Real> Mul for Interval<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = c.iter().copied().fold(T::infinity(), T::min);
        let hi = c.iter().copied().fold(T::neg_infinity(), T::max);
        Self::new(lo, hi)
    }
}

impl<T: Real + fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reciprocal_rejects_zero() {
        assert!(Interval::new(-1.0, 2.0).recip().is_none());
        let r = Interval::new(2.0, 4.0).recip().unwrap();
        assert_eq!((r.lo, r.hi), (0.25, 0.5));
        let r = Interval::new(-4.0, -2.0).recip().unwrap();
        assert_eq!((r.lo, r.hi), (-0.5, -0.25));
    }

    #[test]
    fn multiplication_by_point_zero_collapses() {
        let z = Interval::point(0.0) * Interval::new(-3.0, 5.0);
        assert_eq!((z.lo, z.hi), (0.0, 0.0));
    }

    proptest! {
        #[test]
        fn products_enclose_pointwise(
            a in -5.0f64..5.0, w1 in 0.0f64..2.0, b in -5.0f64..5.0, w2 in 0.0f64..2.0,
            t1 in 0.0f64..1.0, t2 in 0.0f64..1.0,
        ) {
            let x = Interval::new(a, a + w1);
            let y = Interval::new(b, b + w2);
            let px = a + t1 * w1;
            let py = b + t2 * w2;
            let tol = 1e-12;
            let prod = x * y;
            prop_assert!(prod.lo - tol <= px * py && px * py <= prod.hi + tol);
            let diff = x - y;
            prop_assert!(diff.lo - tol <= px - py && px - py <= diff.hi + tol);
        }
    }
}
