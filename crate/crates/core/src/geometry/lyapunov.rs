use super::manifold::{map_run, point_segment_distance};
use super::{fixed_data, lozi_apply_n, MapParams, PlanePoint};
use crate::error::{LoziError, Result};
use crate::scalar::{Real, Scalar};

/// `n1 = (N, (1-a-b)/((b-1)^2+a^2))` without square roots, when it lies in
/// the fourth quadrant.
fn period_two<T: Scalar>(params: &MapParams<T>) -> Result<PlanePoint<T>> {
    let (a, b) = (params.a.clone(), params.b.clone());
    let one = T::one();
    let den = (b.clone() - one.clone()) * (b.clone() - one.clone()) + a.clone() * a.clone();
    let u = (one.clone() + a.clone() - b.clone()) / den.clone();
    let v = (one - a - b) / den;
    if u > T::zero() && v < T::zero() {
        Ok(PlanePoint::new(u, v))
    } else {
        Err(LoziError::NoFixedPoint {
            a: params.a.to_f64_lossy(),
            b: params.b.to_f64_lossy(),
        })
    }
}

/// `V(L⁴ q) - V(q)` with `V(x, y) = |(x, y) - n1|²`.
pub fn lyapunov_delta<T: Scalar>(params: &MapParams<T>, q: &PlanePoint<T>) -> Result<T> {
    let n1 = period_two(params)?;
    let v = |p: &PlanePoint<T>| (p.clone() - n1.clone()).norm2();
    Ok(v(&lozi_apply_n(params, q, 4)) - v(q))
}

/// Corners `Z, L²Z, L⁴Z, L⁶Z`, where `Z` is the point where the unstable
/// direction line `p1 + t(-λ^u, -1)` meets the x-axis.
pub fn polygon_p<T: Real>(params: &MapParams<T>) -> Result<[PlanePoint<T>; 4]> {
    let data = fixed_data(params)?;
    let no = || LoziError::NoFixedPoint {
        a: params.a.to_f64_lossy(),
        b: params.b.to_f64_lossy(),
    };
    let p1 = data.p1.ok_or_else(no)?;
    let (_, u) = p1.eigen.ok_or_else(no)?;
    let z = PlanePoint::new(p1.point.x - u * p1.point.y, T::zero());
    Ok([
        z,
        lozi_apply_n(params, &z, 2),
        lozi_apply_n(params, &z, 4),
        lozi_apply_n(params, &z, 6),
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonReport<T> {
    pub corners: [PlanePoint<T>; 4],
    pub l8z: PlanePoint<T>,
    /// Distance from `L⁸Z` to the boundary of `P` (positive inside).
    pub l8z_margin: T,
    /// Smallest signed distance of any vertex of `L²(∂P)` to `∂P`. Edges of
    /// `L²(P)` lie on edges of `P`, so this is zero up to rounding.
    pub boundary_margin: T,
    pub image_vertices: usize,
}

/// Distance from `p` to the boundary of `poly`, positive inside.
pub fn signed_distance<T: Real>(poly: &[PlanePoint<T>], p: &PlanePoint<T>) -> T {
    let n = poly.len();
    let mut dist = T::infinity();
    let mut winding = 0i32;
    for i in 0..n {
        let (u, v) = (poly[i], poly[(i + 1) % n]);
        dist = dist.min(point_segment_distance(p, &u, &v));
        let side = (v - u).cross(&(*p - u));
        if u.y <= p.y {
            if v.y > p.y && side > T::zero() {
                winding += 1;
            }
        } else if v.y <= p.y && side < T::zero() {
            winding -= 1;
        }
    }
    if winding != 0 {
        dist
    } else {
        -dist
    }
}

fn proper_cross<T: Real>(
    p: PlanePoint<T>,
    p2: PlanePoint<T>,
    q: PlanePoint<T>,
    q2: PlanePoint<T>,
    tol: T,
) -> bool {
    let (r, s) = (p2 - p, q2 - q);
    let d1 = r.cross(&(q - p));
    let d2 = r.cross(&(q2 - p));
    let d3 = s.cross(&(p - q));
    let d4 = s.cross(&(p2 - q));
    let strict = |u: T, v: T| (u > tol && v < -tol) || (u < -tol && v > tol);
    strict(d1, d2) && strict(d3, d4)
}

/// Checks `L²(P) ⊂ P` exactly: each edge of `P` is mapped as a polyline with
/// vertices inserted on the kink line, and every image vertex must lie in
/// `P` (within `1e-12`) with no image segment properly crossing `∂P`.
pub fn polygon_invariance<T: Real>(params: &MapParams<T>) -> Result<PolygonReport<T>> {
    let corners = polygon_p(params)?;
    let tol = T::lit(1e-12);
    let mut boundary_margin = T::infinity();
    let mut image_vertices = 0;
    for i in 0..4 {
        let edge = [corners[i], corners[(i + 1) % 4]];
        let image = map_run(params, &map_run(params, &edge, true), true);
        for p in &image {
            let d = signed_distance(&corners, p);
            if d < -tol {
                return Err(LoziError::NotInvariant {
                    x: p.x.to_f64_lossy(),
                    y: p.y.to_f64_lossy(),
                });
            }
            boundary_margin = boundary_margin.min(d);
        }
        for w in image.windows(2) {
            for j in 0..4 {
                if proper_cross(w[0], w[1], corners[j], corners[(j + 1) % 4], tol) {
                    return Err(LoziError::NotInvariant {
                        x: w[0].x.to_f64_lossy(),
                        y: w[0].y.to_f64_lossy(),
                    });
                }
            }
        }
        image_vertices += image.len();
    }
    let l8z = lozi_apply_n(params, &corners[0], 8);
    let l8z_margin = signed_distance(&corners, &l8z);
    Ok(PolygonReport {
        corners,
        l8z,
        l8z_margin,
        boundary_margin,
        image_vertices,
    })
}
