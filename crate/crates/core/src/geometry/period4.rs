use super::{lozi_apply, lozi_apply_n, MapParams, PlanePoint};
use crate::error::{LoziError, Result};
use crate::scalar::Scalar;

/// The segment of period-four points on `y = -x + c`,
/// `c = (1-b²)/(a(1+b²))`, for `a = 1 + b`, and its image under `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct Period4<T> {
    pub a: T,
    pub b: T,
    pub intercept: T,
    /// End points of the part of the line satisfying
    /// `1 + ax + by >= 0`, `1 - a(1 + ax + by) + bx <= 0`, `x <= 0`.
    pub segment: (PlanePoint<T>, PlanePoint<T>),
    pub image: (PlanePoint<T>, PlanePoint<T>),
    /// Largest coordinate of `|L⁴ q - q|` over the sampled points.
    pub max_residual: T,
}

/// Tightens `[lo, hi]` by `k x >= m`.
fn at_least<T: Scalar>(k: T, m: T, lo: &mut Option<T>, hi: &mut Option<T>) {
    if k.is_zero() {
        return;
    }
    let bound = m / k.clone();
    if k > T::zero() {
        if lo.as_ref().is_none_or(|old| bound > *old) {
            *lo = Some(bound);
        }
    } else if hi.as_ref().is_none_or(|old| bound < *old) {
        *hi = Some(bound);
    }
}

/// Requires `a = 1 + b` and `b > 0`; checks `L⁴ = id` at `samples` evenly
/// spaced points of the segment.
pub fn period4_segment<T: Scalar>(params: &MapParams<T>, samples: usize) -> Result<Period4<T>> {
    let (a, b) = (params.a.clone(), params.b.clone());
    let one = T::one();
    if (a.clone() - one.clone() - b.clone()).abs() > T::from_f64_lossy(1e-12) || b <= T::zero() {
        return Err(LoziError::WrongParams(format!(
            "period-four segment needs a = 1 + b with b > 0, got ({}, {})",
            a.to_f64_lossy(),
            b.to_f64_lossy()
        )));
    }
    let bb = b.clone() * b.clone();
    let c = (one.clone() - bb.clone()) / (a.clone() * (one.clone() + bb));
    let bc = b.clone() * c.clone();
    let (mut lo, mut hi) = (None, Some(T::zero()));
    // 1 + ax + b(c - x) >= 0
    at_least(
        a.clone() - b.clone(),
        -(one.clone() + bc.clone()),
        &mut lo,
        &mut hi,
    );
    // 1 - a(1 + bc + (a-b)x) + bx <= 0
    at_least(
        a.clone() * (a.clone() - b.clone()) - b.clone(),
        one.clone() - a.clone() * (one.clone() + bc),
        &mut lo,
        &mut hi,
    );
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(LoziError::WrongParams(
            "unbounded period-four segment".into(),
        ));
    };
    if lo > hi {
        return Err(LoziError::WrongParams("empty period-four segment".into()));
    }
    let on_line = |x: T| PlanePoint::new(x.clone(), c.clone() - x);
    let segment = (on_line(lo.clone()), on_line(hi.clone()));
    let image = (
        lozi_apply(params, &segment.0),
        lozi_apply(params, &segment.1),
    );
    let mut max_residual = T::zero();
    let steps = samples.max(2) - 1;
    for i in 0..=steps {
        let t = T::from_usize(i).expect("small") / T::from_usize(steps).expect("small");
        let q = on_line(lo.clone() + (hi.clone() - lo.clone()) * t);
        let d = lozi_apply_n(params, &q, 4) - q;
        for r in [d.x.abs(), d.y.abs()] {
            if r > max_residual {
                max_residual = r;
            }
        }
    }
    Ok(Period4 {
        a,
        b,
        intercept: c,
        segment,
        image,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;

    #[test]
    fn half() {
        let p = period4_segment(&MapParams::new(1.5f64, 0.5), 101).unwrap();
        assert!((p.intercept - 0.4).abs() < 1e-15);
        assert!((p.segment.0.x + 0.8).abs() < 1e-12 && p.segment.1.x == 0.0);
        assert!(p.max_residual <= 1e-10);
        let q = PlanePoint::new(-0.1, 0.5);
        assert!(lozi_apply_n(&MapParams::new(1.5, 0.5), &q, 4).dist(&q) < 1e-12);
    }

    #[test]
    fn exact() {
        for (n, d) in [(1, 2), (1, 3), (3, 4)] {
            let b = ratio(n, d);
            let params = MapParams::new(Rational::from_integer(1.into()) + b.clone(), b);
            let p = period4_segment(&params, 17).unwrap();
            assert_eq!(p.max_residual, Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn outside_points_are_not_period_four() {
        let params = MapParams::new(1.5, 0.5);
        for x in [-1.5, -1.0, 0.2, 0.6] {
            let q = PlanePoint::new(x, 0.4 - x);
            assert!(lozi_apply_n(&params, &q, 4).dist(&q) > 1e-6, "x = {x}");
        }
    }

    #[test]
    fn wrong_params() {
        assert!(matches!(
            period4_segment(&MapParams::new(1.4, 0.5), 10),
            Err(LoziError::WrongParams(_))
        ));
    }
}
