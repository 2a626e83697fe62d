use super::manifold::clip_to_square;
use super::{
    stable_manifold, unstable_manifold, Growth, ManifoldKind, MapParams, PlanePoint, Polyline,
    Seed, StableSeed,
};
use crate::error::Result;
use crate::scalar::Real;

/// Relative tolerance below which an orientation test counts as zero.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// A transversal crossing of an unstable and a stable branch of `p1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness<T> {
    pub point: PlanePoint<T>,
    pub unstable: ManifoldKind,
    /// Position along the unstable segment, in `[0, 1]`.
    pub unstable_t: T,
    pub stable: ManifoldKind,
    pub stable_t: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Homoclinic<T> {
    Yes(Witness<T>),
    /// Only touching or collinear contacts were found.
    Degenerate(PlanePoint<T>),
    /// Nothing found; relative to the growth budget.
    NoWithinBudget,
}

enum Hit<T> {
    Proper(PlanePoint<T>, T, T),
    Touch(PlanePoint<T>),
}

fn segment_hit<T: Real>(
    p: PlanePoint<T>,
    p2: PlanePoint<T>,
    q: PlanePoint<T>,
    q2: PlanePoint<T>,
) -> Option<Hit<T>> {
    let (r, s) = (p2 - p, q2 - q);
    let tol = T::lit(COLLINEAR_TOL) * r.norm() * s.norm();
    let d1 = r.cross(&(q - p));
    let d2 = r.cross(&(q2 - p));
    let d3 = s.cross(&(p - q));
    let d4 = s.cross(&(p2 - q));
    let strict = |u: T, v: T| (u > tol && v < -tol) || (u < -tol && v > tol);
    if strict(d1, d2) && strict(d3, d4) {
        let t = d3 / (d3 - d4);
        let u = d1 / (d1 - d2);
        return Some(Hit::Proper(p.lerp(&p2, t), t, u));
    }
    let near = |d: T| d.abs() <= tol;
    let on = |x: PlanePoint<T>, a: PlanePoint<T>, b: PlanePoint<T>| {
        let e = b - a;
        let len2 = e.norm2();
        let t = if len2 > T::zero() {
            (x - a).dot(&e) / len2
        } else {
            T::zero()
        };
        t >= -T::lit(COLLINEAR_TOL) && t <= T::one() + T::lit(COLLINEAR_TOL)
    };
    for (d, x, a, b) in [
        (d1, q, p, p2),
        (d2, q2, p, p2),
        (d3, p, q, q2),
        (d4, p2, q, q2),
    ] {
        if near(d) && on(x, a, b) {
            return Some(Hit::Touch(x));
        }
    }
    None
}

/// Uniform grid over the clip square holding stable segments.
struct Grid<T> {
    h: T,
    n: usize,
    cells: Vec<Vec<u32>>,
}

impl<T: Real> Grid<T> {
    fn new(h: T, n: usize) -> Self {
        Self {
            h,
            n,
            cells: vec![Vec::new(); n * n],
        }
    }

    fn cell_range(
        &self,
        u: &PlanePoint<T>,
        v: &PlanePoint<T>,
    ) -> Option<(usize, usize, usize, usize)> {
        let (t0, t1) = clip_to_square(u, v, self.h)?;
        let (a, b) = (u.lerp(v, t0), u.lerp(v, t1));
        let scale = T::from_usize(self.n).expect("grid size") / (self.h + self.h);
        let idx = |c: T| {
            let k = ((c + self.h) * scale).floor().to_f64_lossy();
            (k.max(0.0) as usize).min(self.n - 1)
        };
        let (x0, x1) = (idx(a.x.min(b.x)), idx(a.x.max(b.x)));
        let (y0, y1) = (idx(a.y.min(b.y)), idx(a.y.max(b.y)));
        Some((x0, x1, y0, y1))
    }

    fn insert(&mut self, id: u32, u: &PlanePoint<T>, v: &PlanePoint<T>) {
        if let Some((x0, x1, y0, y1)) = self.cell_range(u, v) {
            for y in y0..=y1 {
                for x in x0..=x1 {
                    self.cells[y * self.n + x].push(id);
                }
            }
        }
    }
}

/// Searches for a transversal crossing between the unstable branches and
/// the stable branches of `p1`, ignoring contacts at `p1` itself.
pub fn find_crossing<T: Real>(
    unstable: &[Polyline<T>],
    stable: &[Polyline<T>],
    p1: PlanePoint<T>,
    clip: T,
) -> Homoclinic<T> {
    let segs: Vec<(PlanePoint<T>, PlanePoint<T>, ManifoldKind)> = stable
        .iter()
        .flat_map(|p| p.segments().map(move |(u, v)| (u, v, p.kind)))
        .collect();
    let n = ((segs.len() as f64).sqrt() as usize).clamp(16, 512);
    let mut grid = Grid::new(clip, n);
    for (i, (u, v, _)) in segs.iter().enumerate() {
        grid.insert(i as u32, u, v);
    }
    let excl = T::lit(1e-9) * (T::one() + p1.norm());
    let mut touch = None;
    for poly in unstable {
        for (u, v) in poly.segments() {
            let Some((x0, x1, y0, y1)) = grid.cell_range(&u, &v) else {
                continue;
            };
            for y in y0..=y1 {
                for x in x0..=x1 {
                    for &id in &grid.cells[y * n + x] {
                        let (q, q2, kind) = segs[id as usize];
                        match segment_hit(u, v, q, q2) {
                            Some(Hit::Proper(pt, t, s)) if pt.dist(&p1) > excl => {
                                if pt.x.abs().max(pt.y.abs()) <= clip {
                                    return Homoclinic::Yes(Witness {
                                        point: pt,
                                        unstable: poly.kind,
                                        unstable_t: t,
                                        stable: kind,
                                        stable_t: s,
                                    });
                                }
                            }
                            Some(Hit::Touch(pt)) if pt.dist(&p1) > excl && touch.is_none() => {
                                touch = Some(pt);
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    touch.map_or(Homoclinic::NoWithinBudget, Homoclinic::Degenerate)
}

/// Grows both unstable and both stable branches of `p1` with the given
/// per-branch arc budget and looks for a transversal intersection.
pub fn homoclinic_intersects<T: Real>(
    params: &MapParams<T>,
    arc_budget: T,
) -> Result<Homoclinic<T>> {
    homoclinic_with(params, &Growth::new(arc_budget))
}

pub fn homoclinic_with<T: Real>(
    params: &MapParams<T>,
    growth: &Growth<T>,
) -> Result<Homoclinic<T>> {
    params.require_invertible()?;
    let unstable = [
        unstable_manifold(params, Seed::P1Right, growth)?,
        unstable_manifold(params, Seed::P1Left, growth)?,
    ];
    let stable = [
        stable_manifold(params, StableSeed::P1Upper, growth)?,
        stable_manifold(params, StableSeed::P1Lower, growth)?,
    ];
    Ok(find_crossing(
        &unstable,
        &stable,
        unstable[0].origin,
        growth.clip,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::LoziError;

    #[test]
    fn segment_tests() {
        let o = PlanePoint::new(0.0, 0.0);
        let hit = segment_hit(
            o,
            PlanePoint::new(2.0, 2.0),
            PlanePoint::new(0.0, 2.0),
            PlanePoint::new(2.0, 0.0),
        );
        assert!(
            matches!(hit, Some(Hit::Proper(p, t, _)) if p.dist(&PlanePoint::new(1.0, 1.0)) < 1e-15 && t == 0.5)
        );
        let touch = segment_hit(
            o,
            PlanePoint::new(2.0, 0.0),
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(1.0, 1.0),
        );
        assert!(matches!(touch, Some(Hit::Touch(_))));
        let miss = segment_hit(
            o,
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(2.0, -1.0),
            PlanePoint::new(2.0, 1.0),
        );
        assert!(miss.is_none());
        let collinear = segment_hit(
            o,
            PlanePoint::new(2.0, 0.0),
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(3.0, 0.0),
        );
        assert!(matches!(collinear, Some(Hit::Touch(_))));
    }

    #[test]
    fn known_cases() {
        let yes = homoclinic_intersects(&MapParams::new(1.7, 0.5), 60.0).unwrap();
        assert!(matches!(yes, Homoclinic::Yes(_)), "{yes:?}");
        if let Homoclinic::Yes(w) = yes {
            assert!(w.point.dist(&PlanePoint::new(1.0 / 1.2, 1.0 / 1.2)) > 1e-9);
        }
        let yes = homoclinic_intersects(&MapParams::new(2.1, 0.05), 60.0).unwrap();
        assert!(matches!(yes, Homoclinic::Yes(_)), "{yes:?}");
        let no = homoclinic_intersects(&MapParams::new(1.0, 0.5), 60.0).unwrap();
        assert_eq!(no, Homoclinic::NoWithinBudget);
        assert!(matches!(
            homoclinic_intersects(&MapParams::new(1.7, 0.0), 60.0),
            Err(LoziError::NonInvertible)
        ));
    }
}
