use super::{fixed_data, lozi_apply, lozi_inverse, FixedPoint, MapParams, PlanePoint};
use crate::error::{LoziError, Result};
use crate::scalar::Real;

/// Which unstable branch to grow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    /// Branch of `p1` leaving along `(-λ^u, -1)`, towards the x-axis.
    P1Right,
    /// The opposite branch of `p1`.
    P1Left,
    /// Half-line of `p2` along `(-λ^u, -1)`.
    P2,
}

/// Which stable branch of `p1` to grow (under the inverse map).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableSeed {
    /// Along `(λ^s, 1)`; a straight half-line for `b > 0`.
    P1Upper,
    /// Along `-(λ^s, 1)`.
    P1Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldKind {
    UnstableRight,
    UnstableLeft,
    UnstableLeftHalfline,
    StableHalfline,
    StableLower,
}

/// Growth limits. Arc length is only counted inside the square of
/// half-size `clip`; segments not meeting the square of half-size `keep`
/// are dropped, which splits the curve into pieces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Growth<T> {
    pub arc_budget: T,
    /// Merge a vertex into its neighbours' chord when it lies within this
    /// distance of it (0 disables merging).
    pub flat_tol: T,
    pub clip: T,
    pub keep: T,
    /// Applications of `L^{±2}`.
    pub max_iters: usize,
    pub max_segments: usize,
    /// The branch counts as converged once a fundamental domain is shorter.
    pub converge_len: T,
}

impl<T: Real> Growth<T> {
    pub fn new(arc_budget: T) -> Self {
        Self {
            arc_budget,
            flat_tol: T::zero(),
            clip: T::lit(20.0),
            keep: T::lit(100.0),
            max_iters: 200,
            max_segments: 200_000,
            converge_len: T::lit(1e-12),
        }
    }

    pub fn with_flat_tol(mut self, flat_tol: T) -> Self {
        self.flat_tol = flat_tol;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline<T> {
    /// Contiguous runs of vertices, ordered from the fixed point outwards.
    pub pieces: Vec<Vec<PlanePoint<T>>>,
    pub kind: ManifoldKind,
    pub origin: PlanePoint<T>,
    /// Growth stopped on the arc budget, segment cap or iteration cap.
    pub truncated: bool,
    /// Fundamental domains shrank below `converge_len`.
    pub converged: bool,
}

impl<T: Real> Polyline<T> {
    pub fn vertices(&self) -> impl Iterator<Item = &PlanePoint<T>> {
        self.pieces.iter().flatten()
    }

    pub fn segments(&self) -> impl Iterator<Item = (PlanePoint<T>, PlanePoint<T>)> + '_ {
        self.pieces
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
    }

    pub fn segment_count(&self) -> usize {
        self.pieces.iter().map(|p| p.len().saturating_sub(1)).sum()
    }

    pub fn arc_length(&self) -> T {
        self.segments().fold(T::zero(), |s, (p, q)| s + p.dist(&q))
    }

    /// Distance from `p` to the nearest segment.
    pub fn distance_to(&self, p: &PlanePoint<T>) -> T {
        self.segments()
            .map(|(u, v)| point_segment_distance(p, &u, &v))
            .fold(T::infinity(), T::min)
    }
}

pub(crate) fn point_segment_distance<T: Real>(
    p: &PlanePoint<T>,
    u: &PlanePoint<T>,
    v: &PlanePoint<T>,
) -> T {
    let d = *v - *u;
    let len2 = d.norm2();
    if len2 == T::zero() {
        return p.dist(u);
    }
    let t = ((*p - *u).dot(&d) / len2).max(T::zero()).min(T::one());
    p.dist(&u.lerp(v, t))
}

/// Portion of `[u, v]` inside `|x|, |y| <= h`, as parameters `(t0, t1)`.
pub(crate) fn clip_to_square<T: Real>(
    u: &PlanePoint<T>,
    v: &PlanePoint<T>,
    h: T,
) -> Option<(T, T)> {
    let (mut t0, mut t1) = (T::zero(), T::one());
    let d = *v - *u;
    for (p, q) in [
        (-d.x, u.x + h),
        (d.x, h - u.x),
        (-d.y, u.y + h),
        (d.y, h - u.y),
    ] {
        if p == T::zero() {
            if q < T::zero() {
                return None;
            }
        } else {
            let r = q / p;
            if p < T::zero() {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
        if t0 > t1 {
            return None;
        }
    }
    Some((t0, t1))
}

/// Applies `L` (or `L^{-1}`) to a vertex run, inserting a vertex wherever a
/// segment crosses the kink line (`x = 0` forwards, `y = 0` backwards) so
/// the image is exact.
pub(crate) fn map_run<T: Real>(
    params: &MapParams<T>,
    run: &[PlanePoint<T>],
    forward: bool,
) -> Vec<PlanePoint<T>> {
    let kink = |p: &PlanePoint<T>| if forward { p.x } else { p.y };
    let f = |p: &PlanePoint<T>| {
        if forward {
            lozi_apply(params, p)
        } else {
            lozi_inverse(params, p).expect("invertibility checked by caller")
        }
    };
    let mut out = Vec::with_capacity(run.len() + 4);
    for (i, p) in run.iter().enumerate() {
        if i > 0 {
            let q = &run[i - 1];
            let (kq, kp) = (kink(q), kink(p));
            if (kq < T::zero() && kp > T::zero()) || (kq > T::zero() && kp < T::zero()) {
                let mut m = q.lerp(p, kq / (kq - kp));
                if forward {
                    m.x = T::zero();
                } else {
                    m.y = T::zero();
                }
                out.push(f(&m));
            }
        }
        out.push(f(p));
    }
    out
}

fn drop_far<T: Real>(run: Vec<PlanePoint<T>>, keep: T, out: &mut Vec<Vec<PlanePoint<T>>>) {
    let mut cur: Vec<PlanePoint<T>> = Vec::new();
    for w in run.windows(2) {
        if clip_to_square(&w[0], &w[1], keep).is_some() {
            if cur.is_empty() {
                cur.push(w[0]);
            }
            cur.push(w[1]);
        } else if cur.len() > 1 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.clear();
        }
    }
    if cur.len() > 1 {
        out.push(cur);
    }
}

fn merge_flat<T: Real>(run: &mut Vec<PlanePoint<T>>, tol: T) {
    if tol <= T::zero() || run.len() < 3 {
        return;
    }
    let mut out = vec![run[0]];
    for i in 1..run.len() - 1 {
        let prev = *out.last().expect("non-empty");
        if point_segment_distance(&run[i], &prev, &run[i + 1]) > tol {
            out.push(run[i]);
        }
    }
    out.push(run[run.len() - 1]);
    *run = out;
}

struct Branch<T> {
    origin: PlanePoint<T>,
    dir: PlanePoint<T>,
    /// Extent (in units of `dir`) of the exact local linear segment.
    reach: T,
    /// Expansion factor of `L^{±2}` along `dir`.
    factor: T,
    forward: bool,
    kind: ManifoldKind,
}

fn saddle<T: Real>(
    p: Option<FixedPoint<T>>,
    params: &MapParams<T>,
) -> Result<(PlanePoint<T>, T, T)> {
    let no = || LoziError::NoFixedPoint {
        a: params.a.to_f64_lossy(),
        b: params.b.to_f64_lossy(),
    };
    let p = p.ok_or_else(no)?;
    if !p.is_saddle() {
        return Err(no());
    }
    let (s, u) = p.eigen.ok_or_else(no)?;
    Ok((p.point, s, u))
}

fn grow<T: Real>(params: &MapParams<T>, br: Branch<T>, growth: &Growth<T>) -> Polyline<T> {
    let local_end = br.origin + br.dir * br.reach;
    let mut poly = Polyline {
        pieces: vec![vec![br.origin, local_end]],
        kind: br.kind,
        origin: br.origin,
        truncated: false,
        converged: false,
    };
    let clipped_len = |u: &PlanePoint<T>, v: &PlanePoint<T>| {
        clip_to_square(u, v, growth.clip).map_or(T::zero(), |(t0, t1)| (t1 - t0) * u.dist(v))
    };
    let mut used = clipped_len(&br.origin, &local_end);
    let mut segments = 1usize;
    let mut domain = vec![vec![br.origin + br.dir * (br.reach / br.factor), local_end]];
    let mut iters = 0;
    'grow: loop {
        if iters == growth.max_iters {
            poly.truncated = true;
            break;
        }
        iters += 1;
        let mut next = Vec::new();
        for run in &domain {
            let once = map_run(params, run, br.forward);
            let mut twice = map_run(params, &once, br.forward);
            merge_flat(&mut twice, growth.flat_tol);
            drop_far(twice, growth.keep, &mut next);
        }
        domain = next;
        if domain.is_empty() {
            break;
        }
        let len = domain
            .iter()
            .flat_map(|r| r.windows(2))
            .fold(T::zero(), |s, w| s + w[0].dist(&w[1]));
        if len < growth.converge_len {
            poly.converged = true;
            break;
        }
        for run in &domain {
            let last = poly.pieces.last_mut().expect("non-empty");
            let target = if *last.last().expect("non-empty") == run[0] {
                last
            } else {
                poly.pieces.push(vec![run[0]]);
                poly.pieces.last_mut().expect("just pushed")
            };
            for w in run.windows(2) {
                let l = clipped_len(&w[0], &w[1]);
                if used + l > growth.arc_budget {
                    let t = (growth.arc_budget - used) / l;
                    target.push(w[0].lerp(&w[1], t.max(T::zero()).min(T::one())));
                    poly.truncated = true;
                    break 'grow;
                }
                used = used + l;
                target.push(w[1]);
                segments += 1;
                if segments >= growth.max_segments {
                    poly.truncated = true;
                    break 'grow;
                }
            }
        }
    }
    poly.pieces.retain(|p| p.len() > 1);
    poly
}

/// Grows an unstable branch by fundamental domains under `L²`.
pub fn unstable_manifold<T: Real>(
    params: &MapParams<T>,
    seed: Seed,
    growth: &Growth<T>,
) -> Result<Polyline<T>> {
    let data = fixed_data(params)?;
    let half = T::lit(0.5);
    let br = match seed {
        Seed::P1Right | Seed::P1Left => {
            let (o, _, u) = saddle(data.p1, params)?;
            let dir = if seed == Seed::P1Right {
                PlanePoint::new(-u, -T::one())
            } else {
                PlanePoint::new(u, T::one())
            };
            Branch {
                origin: o,
                dir,
                reach: half * o.x / u.abs(),
                factor: u * u,
                forward: true,
                kind: if seed == Seed::P1Right {
                    ManifoldKind::UnstableRight
                } else {
                    ManifoldKind::UnstableLeft
                },
            }
        }
        Seed::P2 => {
            let (o, _, u) = saddle(data.p2, params)?;
            Branch {
                origin: o,
                dir: PlanePoint::new(-u, -T::one()),
                reach: half * o.x.abs() / u.abs(),
                factor: u * u,
                forward: true,
                kind: ManifoldKind::UnstableLeftHalfline,
            }
        }
    };
    Ok(grow(params, br, growth))
}

/// Grows a stable branch of `p1` under `L^{-2}`.
pub fn stable_manifold<T: Real>(
    params: &MapParams<T>,
    seed: StableSeed,
    growth: &Growth<T>,
) -> Result<Polyline<T>> {
    params.require_invertible()?;
    let data = fixed_data(params)?;
    let (o, s, _) = saddle(data.p1, params)?;
    let sign = if seed == StableSeed::P1Upper {
        T::one()
    } else {
        -T::one()
    };
    let reach = T::lit(0.5) * (o.x / s.abs().max(T::eps())).min(o.y);
    let br = Branch {
        origin: o,
        dir: PlanePoint::new(s, T::one()) * sign,
        reach,
        factor: T::one() / (s * s),
        forward: false,
        kind: if seed == StableSeed::P1Upper {
            ManifoldKind::StableHalfline
        } else {
            ManifoldKind::StableLower
        },
    };
    Ok(grow(params, br, growth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lozi_apply_n;

    #[test]
    fn right_branch_passes_through_z() {
        let params = MapParams::new(1.0, 0.5);
        let poly = unstable_manifold(&params, Seed::P1Right, &Growth::new(50.0)).unwrap();
        let z = PlanePoint::new(2.0 / 3.0 * (1.0 + (1.0 + 3f64.sqrt()) / 2.0), 0.0);
        assert!((z.x - 1.577).abs() < 1e-3);
        assert!(poly.distance_to(&z) < 1e-12);
        assert!(poly.converged && !poly.truncated);
        let n1 = PlanePoint::new(1.2, -0.4);
        let last = poly.vertices().last().unwrap();
        assert!(last.dist(&n1) < 1e-6, "{last}");
    }

    #[test]
    fn branches_are_invariant_under_l2() {
        for (a, b) in [(1.0f64, 0.5f64), (1.7, 0.5), (1.4, 0.3)] {
            let params = MapParams::new(a, b);
            for seed in [Seed::P1Right, Seed::P1Left, Seed::P2] {
                let poly = unstable_manifold(&params, seed, &Growth::new(15.0)).unwrap();
                let verts: Vec<_> = poly.vertices().copied().collect();
                // vertices well inside the curve map back onto it
                let inner = verts.len() / 3;
                for v in &verts[..inner] {
                    let img = lozi_apply_n(&params, v, 2);
                    if img.x.abs().max(img.y.abs()) < 20.0 {
                        assert!(poly.distance_to(&img) < 1e-9, "({a},{b}) {seed:?} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn stable_half_line_is_straight() {
        let params = MapParams::new(1.7, 0.5);
        let poly = stable_manifold(&params, StableSeed::P1Upper, &Growth::new(10.0)).unwrap();
        let o = poly.origin;
        let s = (-1.7 + (1.7f64 * 1.7 + 2.0).sqrt()) / 2.0;
        for v in poly.vertices() {
            assert!((*v - o).cross(&PlanePoint::new(s, 1.0)).abs() < 1e-9);
        }
        assert!(poly.truncated);
        let lower = stable_manifold(&params, StableSeed::P1Lower, &Growth::new(30.0)).unwrap();
        for (u, v) in lower.segments().take(200) {
            let (fu, fv) = (lozi_apply(&params, &u), lozi_apply(&params, &v));
            if fu.x.abs().max(fu.y.abs()) < 20.0 && u.x * v.x >= 0.0 {
                assert!(lower.distance_to(&fu) < 1e-9 && lower.distance_to(&fv) < 1e-9);
            }
        }
        assert!(matches!(
            stable_manifold(
                &MapParams::new(1.7, 0.0),
                StableSeed::P1Upper,
                &Growth::new(10.0)
            ),
            Err(LoziError::NonInvertible)
        ));
    }

    #[test]
    fn flat_merge_removes_collinear_vertices() {
        let mut run = vec![
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(1.0, 1.0),
            PlanePoint::new(2.0, 2.0),
            PlanePoint::new(3.0, 0.0),
        ];
        merge_flat(&mut run, 1e-12);
        assert_eq!(run.len(), 3);
    }

    #[test]
    fn clipping() {
        let (u, v) = (PlanePoint::new(-30.0f64, 0.0), PlanePoint::new(30.0, 0.0));
        let (t0, t1) = clip_to_square(&u, &v, 20.0).unwrap();
        assert!((t0 - 1.0 / 6.0).abs() < 1e-15 && (t1 - 5.0 / 6.0).abs() < 1e-15);
        assert!(clip_to_square(
            &PlanePoint::new(30.0, 30.0),
            &PlanePoint::new(40.0, 25.0),
            20.0
        )
        .is_none());
    }
}
