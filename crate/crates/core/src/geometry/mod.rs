//! Plane dynamics of `L(x, y) = (1 - a|x| + b y, x)`: fixed and period-two
//! points, invariant manifolds, homoclinic detection, the Lyapunov
//! certificate near `(1, 1/2)`, and the zero-entropy classifier.

mod classify;
mod fixed;
mod homoclinic;
mod lyapunov;
mod manifold;
mod period4;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{LoziError, Result};
use crate::scalar::Scalar;

pub use classify::{
    classify_with_witness, classify_zero_entropy, scan_zero_entropy, AnalyticCase, ScanGrid,
    ZeroEntropyVerdict, ZeroScan, CONVERGENCE_TOL, MAX_L4_STEPS,
};
pub use fixed::{fixed_data, FixedData, FixedPoint};
pub use homoclinic::{
    find_crossing, homoclinic_intersects, homoclinic_with, Homoclinic, Witness, COLLINEAR_TOL,
};
pub use lyapunov::{lyapunov_delta, polygon_invariance, polygon_p, signed_distance, PolygonReport};
pub use manifold::{
    stable_manifold, unstable_manifold, Growth, ManifoldKind, Polyline, Seed, StableSeed,
};
pub use period4::{period4_segment, Period4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PlanePoint<T> {
    pub x: T,
    pub y: T,
}

impl<T> PlanePoint<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }
}

impl<T: Scalar> PlanePoint<T> {
    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn norm2(&self) -> T {
        self.dot(self)
    }
}

impl<T: crate::scalar::Real> PlanePoint<T> {
    pub fn norm(&self) -> T {
        self.x.hypot(self.y)
    }

    pub fn dist(&self, o: &Self) -> T {
        (*self - *o).norm()
    }

    pub fn lerp(&self, o: &Self, t: T) -> Self {
        *self + (*o - *self) * t
    }
}

impl<T: Scalar> Add for PlanePoint<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for PlanePoint<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for PlanePoint<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Self::new(self.x * k.clone(), self.y * k)
    }
}

impl<T: fmt::Display> fmt::Display for PlanePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Parameters of the planar map. Unlike [`crate::Params`], no hyperbolicity
/// is implied: the zero-entropy analysis lives mostly outside that region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapParams<T> {
    pub a: T,
    pub b: T,
}

impl<T> MapParams<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }
}

impl<T: Scalar> MapParams<T> {
    pub fn require_invertible(&self) -> Result<()> {
        if self.b.is_zero() {
            Err(LoziError::NonInvertible)
        } else {
            Ok(())
        }
    }
}

pub fn lozi_apply<T: Scalar>(params: &MapParams<T>, p: &PlanePoint<T>) -> PlanePoint<T> {
    PlanePoint::new(
        T::one() - params.a.clone() * p.x.abs() + params.b.clone() * p.y.clone(),
        p.x.clone(),
    )
}

pub fn lozi_apply_n<T: Scalar>(
    params: &MapParams<T>,
    p: &PlanePoint<T>,
    n: usize,
) -> PlanePoint<T> {
    let mut q = p.clone();
    for _ in 0..n {
        q = lozi_apply(params, &q);
    }
    q
}

/// `L^{-1}(X, Y) = (Y, (X - 1 + a|Y|) / b)`.
pub fn lozi_inverse<T: Scalar>(params: &MapParams<T>, p: &PlanePoint<T>) -> Result<PlanePoint<T>> {
    params.require_invertible()?;
    Ok(PlanePoint::new(
        p.y.clone(),
        (p.x.clone() - T::one() + params.a.clone() * p.y.abs()) / params.b.clone(),
    ))
}

/// Jacobian `[[∓a, b], [1, 0]]` on the side `x > 0` (upper sign) or
/// `x < 0`, row-major.
pub fn jacobian<T: Scalar>(params: &MapParams<T>, positive_side: bool) -> [[T; 2]; 2] {
    let a = if positive_side {
        -params.a.clone()
    } else {
        params.a.clone()
    };
    [[a, params.b.clone()], [T::one(), T::zero()]]
}

pub(crate) fn mat_mul<T: Scalar>(m: &[[T; 2]; 2], n: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    let e =
        |i: usize, j: usize| m[i][0].clone() * n[0][j].clone() + m[i][1].clone() * n[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;
    use rand::{Rng, SeedableRng};

    #[test]
    fn fixed_point_at_one_half() {
        let params = MapParams::new(ratio(1, 1), ratio(1, 2));
        let p1 = PlanePoint::new(ratio(2, 3), ratio(2, 3));
        assert_eq!(lozi_apply(&params, &p1), p1);
        let n1 = PlanePoint::new(ratio(6, 5), ratio(-2, 5));
        assert_eq!(lozi_apply_n(&params, &n1, 2), n1);
    }

    #[test]
    fn inverse_round_trip() {
        let params = MapParams::new(1.4, 0.3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = PlanePoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let q = lozi_inverse(&params, &lozi_apply(&params, &p)).unwrap();
            assert!(q.dist(&p) < 1e-12);
        }
        assert!(matches!(
            lozi_inverse(&MapParams::new(1.4, 0.0), &PlanePoint::new(0.0, 0.0)),
            Err(LoziError::NonInvertible)
        ));
        let exact = MapParams::new(ratio(7, 5), ratio(-3, 10));
        let p = PlanePoint::new(ratio(-5, 7), ratio(11, 3));
        assert_eq!(lozi_inverse(&exact, &lozi_apply(&exact, &p)).unwrap(), p);
    }

    #[test]
    fn orientation_follows_minus_b() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for b in [0.5f64, 0.1, -0.1, -0.7] {
            let params = MapParams::new(1.3, b);
            for _ in 0..100 {
                let p: PlanePoint<f64> =
                    PlanePoint::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                if p.x.abs() < 1e-3 {
                    continue;
                }
                // image of a small positively oriented triangle
                let h = 1e-4;
                let (q0, q1, q2) = (
                    lozi_apply(&params, &p),
                    lozi_apply(&params, &(p + PlanePoint::new(h, 0.0))),
                    lozi_apply(&params, &(p + PlanePoint::new(0.0, h))),
                );
                let det = (q1 - q0).cross(&(q2 - q0)) / (h * h);
                assert!((det + b).abs() < 1e-9, "b={b} det={det}");
            }
        }
        let j = jacobian(&MapParams::new(ratio(3, 2), ratio(1, 4)), true);
        let det: Rational = j[0][0].clone() * j[1][1].clone() - j[0][1].clone() * j[1][0].clone();
        assert_eq!(det, ratio(-1, 4));
    }
}
