use super::{MapParams, PlanePoint};
use crate::error::{LoziError, Result};
use crate::scalar::Real;

/// A fixed point with the eigenvalues of `DL` there. The eigenvector for
/// eigenvalue `λ` is `(λ, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPoint<T> {
    pub point: PlanePoint<T>,
    /// `(stable, unstable)` eigenvalues ordered by modulus; `None` when
    /// they are complex.
    pub eigen: Option<(T, T)>,
}

impl<T: Real> FixedPoint<T> {
    pub fn is_saddle(&self) -> bool {
        matches!(self.eigen, Some((s, u)) if s.abs() < T::one() && u.abs() > T::one())
    }

    pub fn stable_dir(&self) -> Option<PlanePoint<T>> {
        self.eigen.map(|(s, _)| PlanePoint::new(s, T::one()))
    }

    pub fn unstable_dir(&self) -> Option<PlanePoint<T>> {
        self.eigen.map(|(_, u)| PlanePoint::new(u, T::one()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedData<T> {
    /// Fixed point in the first quadrant.
    pub p1: Option<FixedPoint<T>>,
    /// Fixed point in the third quadrant.
    pub p2: Option<FixedPoint<T>>,
    /// Period-two orbit `n1` (fourth quadrant) ↔ `n2` (second quadrant).
    pub n1: Option<PlanePoint<T>>,
    pub n2: Option<PlanePoint<T>>,
    /// Whether the period-two orbit attracts.
    pub period2_attracting: bool,
}

/// Roots of `μ² - t μ - b = 0`, ordered by modulus.
fn eigen<T: Real>(t: T, b: T) -> Option<(T, T)> {
    let disc = t * t + T::lit(4.0) * b;
    if disc < T::zero() {
        return None;
    }
    let r = disc.sqrt();
    let (m1, m2) = ((t - r) / T::lit(2.0), (t + r) / T::lit(2.0));
    Some(if m1.abs() <= m2.abs() {
        (m1, m2)
    } else {
        (m2, m1)
    })
}

/// Fixed points `p1 = (1/(1+a-b), ·)`, `p2 = (1/(1-a-b), ·)` and the
/// period-two orbit `n1 = (N, (1-a-b)/((b-1)^2+a^2))`,
/// `N = (1+a-b)/((b-1)^2+a^2)`, each where it exists.
pub fn fixed_data<T: Real>(params: &MapParams<T>) -> Result<FixedData<T>> {
    let (a, b) = (params.a, params.b);
    let one = T::one();
    let side = |x: T| (x.is_finite()).then_some(x);
    let p1 = side(one / (one + a - b))
        .filter(|&x| x > T::zero())
        .map(|x| FixedPoint {
            point: PlanePoint::new(x, x),
            eigen: eigen(-a, b),
        });
    let p2 = side(one / (one - a - b))
        .filter(|&x| x < T::zero())
        .map(|x| FixedPoint {
            point: PlanePoint::new(x, x),
            eigen: eigen(a, b),
        });
    if p1.is_none() && p2.is_none() {
        return Err(LoziError::NoFixedPoint {
            a: a.to_f64_lossy(),
            b: b.to_f64_lossy(),
        });
    }
    let den = (b - one) * (b - one) + a * a;
    let (u, v) = ((one + a - b) / den, (one - a - b) / den);
    let (n1, n2) = if u > T::zero() && v < T::zero() {
        (Some(PlanePoint::new(u, v)), Some(PlanePoint::new(v, u)))
    } else {
        (None, None)
    };
    // D(L²) at n1 has trace 2b - a² and determinant b²
    let period2_attracting =
        n1.is_some() && b.abs() < one && (T::lit(2.0) * b - a * a).abs() < one + b * b;
    Ok(FixedData {
        p1,
        p2,
        n1,
        n2,
        period2_attracting,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{lozi_apply, lozi_apply_n};
    use super::*;

    #[test]
    fn anchors_at_one_half() {
        let params = MapParams::new(1.0, 0.5);
        let d = fixed_data(&params).unwrap();
        let p1 = d.p1.unwrap();
        assert!(p1.point.dist(&PlanePoint::new(2.0 / 3.0, 2.0 / 3.0)) < 1e-15);
        assert!(d.n1.unwrap().dist(&PlanePoint::new(1.2, -0.4)) < 1e-15);
        assert!(d.n2.unwrap().dist(&PlanePoint::new(-0.4, 1.2)) < 1e-15);
        assert!(d.period2_attracting && p1.is_saddle() && d.p2.unwrap().is_saddle());
        let (s, u) = p1.eigen.unwrap();
        assert!((s - (-1.0 + 3f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((u - (-1.0 - 3f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn residuals() {
        for (a, b) in [(1.0, 0.5), (1.2, 0.4), (0.8, 0.6), (1.7, 0.5), (1.4, 0.9)] {
            let params = MapParams::new(a, b);
            let d = fixed_data(&params).unwrap();
            for p in [d.p1, d.p2].into_iter().flatten() {
                assert!(lozi_apply(&params, &p.point).dist(&p.point) <= 1e-12);
                if let Some((s, u)) = p.eigen {
                    // eigenvector (λ, 1) under the linear part on p's side
                    let j = super::super::jacobian(&params, p.point.x > 0.0);
                    for l in [s, u] {
                        let img = PlanePoint::new(j[0][0] * l + j[0][1], j[1][0] * l);
                        assert!(img.dist(&PlanePoint::new(l * l, l)) < 1e-12);
                    }
                }
            }
            for n in [d.n1, d.n2].into_iter().flatten() {
                assert!(lozi_apply_n(&params, &n, 2).dist(&n) <= 1e-12);
                assert!(lozi_apply(&params, &n).dist(&n) > 1e-3);
            }
        }
    }

    #[test]
    fn degenerate_regions() {
        // a < 1 - b: only p1, and it attracts
        let d = fixed_data(&MapParams::new(0.3, 0.5)).unwrap();
        assert!(d.p1.is_some() && d.p2.is_none() && d.n1.is_none());
        assert!(!d.p1.unwrap().is_saddle());
        assert!(matches!(
            fixed_data(&MapParams::new(-1.6, -0.5)),
            Err(LoziError::NoFixedPoint { .. })
        ));
        assert!(
            !fixed_data(&MapParams::new(1.7, 0.5))
                .unwrap()
                .period2_attracting
        );
    }
}
