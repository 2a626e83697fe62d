//! Parameter derivatives of the pruning functions at `b = 0`: closed
//! forms, the two-sided bound formulas, monotone direction cones, and a
//! finite-difference oracle.

use crate::error::{LoziError, Result};
use crate::pruning::{eval_p, eval_q, Params};
use crate::scalar::Real;
use crate::symbolic::{Symbol, Word};

/// Which parameter a bound differentiates in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    DA,
    DB,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivBounds<T> {
    pub lo: T,
    pub hi: T,
    pub at: Params<T>,
    pub direction: Direction,
    /// Only set for [`Direction::DB`].
    pub eps_minus2: Option<Symbol>,
}

impl<T: Real> DerivBounds<T> {
    pub fn contains(&self, x: T, tol: T) -> bool {
        self.lo - tol <= x && x <= self.hi + tol
    }
}

/// Directions `(N1, -1)` and `(N2, +1)` in the `(a, b)` plane along which
/// the derivative bounds guarantee `p - q` increases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonotoneCone<T> {
    pub a: T,
    pub n1: T,
    pub n2: T,
}

pub const DEFAULT_CONE_MARGIN: f64 = 1e-6;
pub const DEFAULT_FD_STEP: f64 = 1e-6;

fn check_a<T: Real>(a: T) -> Result<()> {
    if a > T::one() && a <= T::lit(2.0) {
        Ok(())
    } else {
        Err(LoziError::WrongParams(format!(
            "derivative formulas need 1 < a <= 2, got {}",
            a.to_f64_lossy()
        )))
    }
}

/// `∂p/∂b` at `b = 0`, which is `1 / (a ε_{-2})`.
pub fn dp_db_at_b0<T: Real>(w: &Word, a: T) -> Result<T> {
    let e = w.get(-2).ok_or(LoziError::InsufficientWord {
        side: "tail",
        needed: 2,
        have: w.tail_len(),
    })?;
    Ok(T::one() / (a * e.value::<T>()))
}

/// `∂q/∂b` at `b = 0` on the head `(+1, -1, -1, …)`:
/// `(1 - 2/a) / (a (a-1)^2)`.
pub fn dq_db_at_b0<T: Real>(a: T) -> T {
    let one = T::one();
    (one - T::lit(2.0) / a) / (a * (a - one) * (a - one))
}

/// Bounds on `∂(p-q)/∂a` at `(a, 0)` for heads in `κ(a)`.
pub fn a_derivative_bounds<T: Real>(a: T) -> Result<DerivBounds<T>> {
    check_a(a)?;
    let (two, six) = (T::lit(2.0), T::lit(6.0));
    let cubic = a * a * a + two * a * a - six * a;
    let den = two * a * a * (a - T::one());
    Ok(DerivBounds {
        lo: (cubic + two) / den,
        hi: (cubic + T::lit(4.0)) / den,
        at: Params::new(a, T::zero()),
        direction: Direction::DA,
        eps_minus2: None,
    })
}

/// Bounds on `∂(p-q)/∂b` at `(a, 0)` for heads in `κ(a)` and the given
/// `ε_{-2}`.
pub fn b_derivative_bounds<T: Real>(a: T, eps_minus2: Symbol) -> Result<DerivBounds<T>> {
    check_a(a)?;
    let two = T::lit(2.0);
    let quad = -two * a * a + T::lit(7.0) * a;
    let den = two * a * a * a * (a - T::one());
    let dp = T::one() / (a * eps_minus2.value::<T>());
    Ok(DerivBounds {
        lo: dp - (quad - two) / den,
        hi: dp - (quad - T::lit(8.0)) / den,
        at: Params::new(a, T::zero()),
        direction: Direction::DB,
        eps_minus2: Some(eps_minus2),
    })
}

/// Cone directions with `N1 lo_a - max hi_b > margin` and
/// `N2 lo_a + min lo_b > margin`, each the smallest such value (floored at
/// `margin / lo_a` so both stay positive).
pub fn monotone_cone<T: Real>(a: T, margin: T) -> Result<MonotoneCone<T>> {
    let da = a_derivative_bounds(a)?;
    if da.lo <= T::zero() {
        return Err(LoziError::DegenerateBounds {
            a: a.to_f64_lossy(),
            lo_a: da.lo.to_f64_lossy(),
        });
    }
    let plus = b_derivative_bounds(a, Symbol::Plus)?;
    let minus = b_derivative_bounds(a, Symbol::Minus)?;
    let hi_b = plus.hi.max(minus.hi);
    let lo_b = plus.lo.min(minus.lo);
    Ok(MonotoneCone {
        a,
        n1: (hi_b + margin).max(margin) / da.lo,
        n2: (margin - lo_b).max(margin) / da.lo,
    })
}

/// Function differentiated by [`fd_derivative`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdTarget {
    P,
    Q,
    PMinusQ,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdEstimate<T> {
    /// Central difference with step `h`.
    pub value: T,
    /// Richardson extrapolation from steps `h` and `h/2`.
    pub richardson: T,
    /// Estimated truncation error of `value`, `4/3 |D(h) - D(h/2)|`.
    pub truncation: T,
    /// Series error propagated through the difference quotient.
    pub series: T,
}

fn eval_target<T: Real>(f: FdTarget, w: &Word, params: &Params<T>) -> Result<(T, T)> {
    let p_depth = w.tail_len().saturating_sub(2);
    let q_depth = w.head_len().saturating_sub(1);
    let p = || eval_p(w, p_depth, params);
    let q = || eval_q(w, q_depth, params);
    Ok(match f {
        FdTarget::P => {
            let v = p()?;
            (v.value, v.err)
        }
        FdTarget::Q => {
            let v = q()?;
            (v.value, v.err)
        }
        FdTarget::PMinusQ => {
            let (vp, vq) = (p()?, q()?);
            (vp.value - vq.value, vp.err + vq.err)
        }
    })
}

fn central<T: Real>(
    f: FdTarget,
    w: &Word,
    params: &Params<T>,
    dir: (T, T),
    h: T,
) -> Result<(T, T)> {
    let at = |t: T| Params::new(params.a + t * dir.0, params.b + t * dir.1);
    let (plus, minus) = (at(h), at(-h));
    plus.require_hyperbolic()?;
    minus.require_hyperbolic()?;
    let (fp, ep) = eval_target(f, w, &plus)?;
    let (fm, em) = eval_target(f, w, &minus)?;
    let two_h = T::lit(2.0) * h;
    Ok(((fp - fm) / two_h, (ep + em) / two_h))
}

/// Derivative of `f` along `dir` (not normalised: the result is
/// `∇f · dir`), using the full tail and head of `w`.
pub fn fd_derivative<T: Real>(
    f: FdTarget,
    w: &Word,
    params: &Params<T>,
    dir: (T, T),
    h: T,
) -> Result<FdEstimate<T>> {
    let (d1, series) = central(f, w, params, dir, h)?;
    let (d2, _) = central(f, w, params, dir, h / T::lit(2.0))?;
    let diff = d1 - d2;
    Ok(FdEstimate {
        value: d1,
        richardson: d2 + (d2 - d1) / T::lit(3.0),
        truncation: diff.abs() * T::lit(4.0) / T::lit(3.0),
        series,
    })
}

/// Outcome of checking FD derivatives against the bound formulas over
/// every tail of a given length, with head `κ(a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundSweep {
    pub a: f64,
    pub words: usize,
    /// Largest distance outside `[lo, hi]` seen for the a-derivative.
    pub excess_a: f64,
    /// Same for the b-derivative (bounds chosen by each word's `ε_{-2}`).
    pub excess_b: f64,
    pub range_a: (f64, f64),
    pub range_b: (f64, f64),
}

impl BoundSweep {
    pub fn within(&self, tol: f64) -> bool {
        self.excess_a <= tol && self.excess_b <= tol
    }
}

/// Finite-difference check of both bound formulas at `(a, 0)` over all
/// `2^tail_len` tails, each followed by the first `head_len` symbols of
/// `κ(a)`.
pub fn bound_sweep(a: f64, tail_len: usize, head_len: usize, h: f64) -> Result<BoundSweep> {
    use rayon::prelude::*;
    if !(2..=24).contains(&tail_len) {
        return Err(LoziError::WrongParams(format!(
            "tail length {tail_len} outside 2..=24"
        )));
    }
    let head = crate::tent::kneading_exact(a, head_len)?.symbols;
    let da = a_derivative_bounds(a)?;
    let db = [
        b_derivative_bounds(a, Symbol::Plus)?,
        b_derivative_bounds(a, Symbol::Minus)?,
    ];
    let params = Params::new(a, 0.0);
    let excess = |b: &DerivBounds<f64>, v: f64| (b.lo - v).max(v - b.hi).max(0.0);
    let per_word = |bits: u64| -> Result<(f64, f64, f64, f64)> {
        let tail = Word::from_bits(bits, tail_len, 0).tail;
        let w = Word::new(tail, head.clone());
        let fa = fd_derivative(FdTarget::PMinusQ, &w, &params, (1.0, 0.0), h)?.value;
        let fb = fd_derivative(FdTarget::PMinusQ, &w, &params, (0.0, 1.0), h)?.value;
        let bb = &db[usize::from(w.get(-2) == Some(Symbol::Minus))];
        Ok((fa, fb, excess(&da, fa), excess(bb, fb)))
    };
    let init = || BoundSweep {
        a,
        words: 0,
        excess_a: 0.0,
        excess_b: 0.0,
        range_a: (f64::INFINITY, f64::NEG_INFINITY),
        range_b: (f64::INFINITY, f64::NEG_INFINITY),
    };
    let merge = |x: BoundSweep, y: BoundSweep| BoundSweep {
        a,
        words: x.words + y.words,
        excess_a: x.excess_a.max(y.excess_a),
        excess_b: x.excess_b.max(y.excess_b),
        range_a: (x.range_a.0.min(y.range_a.0), x.range_a.1.max(y.range_a.1)),
        range_b: (x.range_b.0.min(y.range_b.0), x.range_b.1.max(y.range_b.1)),
    };
    (0..1u64 << tail_len)
        .into_par_iter()
        .map(|bits| {
            let (fa, fb, ea, eb) = per_word(bits)?;
            Ok(BoundSweep {
                a,
                words: 1,
                excess_a: ea,
                excess_b: eb,
                range_a: (fa, fa),
                range_b: (fb, fb),
            })
        })
        .try_reduce(init, |x, y| Ok(merge(x, y)))
}

/// One row of the direction-field table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeRow {
    pub a: f64,
    pub lo_a: f64,
    pub hi_a: f64,
    pub lo_b_plus: f64,
    pub hi_b_plus: f64,
    pub lo_b_minus: f64,
    pub hi_b_minus: f64,
    /// `None` where the a-derivative lower bound is not positive.
    pub cone: Option<(f64, f64)>,
}

/// Bounds and cones at `n` evenly spaced `a` in `(a_min, 2]`.
pub fn cone_table(a_min: f64, n: usize, margin: f64) -> Result<Vec<ConeRow>> {
    (1..=n)
        .map(|i| {
            let a = a_min + (2.0 - a_min) * i as f64 / n as f64;
            let da = a_derivative_bounds(a)?;
            let bp = b_derivative_bounds(a, Symbol::Plus)?;
            let bm = b_derivative_bounds(a, Symbol::Minus)?;
            let cone = match monotone_cone(a, margin) {
                Ok(c) => Some((c.n1, c.n2)),
                Err(LoziError::DegenerateBounds { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(ConeRow {
                a,
                lo_a: da.lo,
                hi_a: da.hi,
                lo_b_plus: bp.lo,
                hi_b_plus: bp.hi,
                lo_b_minus: bm.lo,
                hi_b_minus: bm.hi,
                cone,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pruning::closed_form_q;
    use crate::tent::kneading_exact;
    use Symbol::{Minus as M, Plus as P};

    fn word(tail: Vec<Symbol>, a: f64, head_len: usize) -> Word {
        Word::new(tail, kneading_exact(a, head_len).unwrap().symbols)
    }

    #[test]
    fn dp_db_values() {
        let w = word(vec![P, P, P], 2.0, 10);
        assert_eq!(dp_db_at_b0(&w, 2.0).unwrap(), 0.5);
        let w = word(vec![P, M, P], 2.0, 10);
        assert_eq!(dp_db_at_b0(&w, 2.0).unwrap(), -0.5);
        assert!(dp_db_at_b0(&Word::new(vec![P], vec![P]), 2.0).is_err());
    }

    #[test]
    fn dp_db_matches_fd() {
        for a in [1.3, 1.7, 2.0] {
            for tail in [vec![M; 30], vec![P; 30], [vec![P; 28], vec![M, P]].concat()] {
                let w = word(tail, a, 200);
                let fd =
                    fd_derivative(FdTarget::P, &w, &Params::new(a, 0.0), (0.0, 1.0), 1e-6).unwrap();
                assert!((fd.value - dp_db_at_b0(&w, a).unwrap()).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn dq_db_values() {
        assert_eq!(dq_db_at_b0(2.0), 0.0);
        assert!((dq_db_at_b0(1.5f64) + 8.0 / 9.0).abs() < 1e-14);
        for a in [1.3f64, 1.5, 1.8, 2.0] {
            let h = 1e-5;
            let fd = (closed_form_q(&Params::new(a, h)).unwrap()
                - closed_form_q(&Params::new(a, -h)).unwrap())
                / (2.0 * h);
            assert!((fd - dq_db_at_b0(a)).abs() < 1e-4, "a={a} fd={fd}");
        }
    }

    #[test]
    fn a_bounds() {
        let b = a_derivative_bounds(2.0).unwrap();
        assert_eq!((b.lo, b.hi), (0.75, 1.0));
        let r2 = 2f64.sqrt();
        assert!((a_derivative_bounds(r2).unwrap().lo - (r2 - 1.0) / 2.0).abs() < 1e-14);
        for i in 0..=100 {
            let a = r2 + (2.0 - r2) * i as f64 / 100.0;
            let b = a_derivative_bounds(a).unwrap();
            assert!(b.lo <= b.hi && b.lo >= (r2 - 1.0) / 2.0 - 1e-14);
        }
        assert!(a_derivative_bounds(2.5).is_err());
    }

    #[test]
    fn b_bounds_at_two() {
        let p = b_derivative_bounds(2.0, P).unwrap();
        let m = b_derivative_bounds(2.0, M).unwrap();
        assert!(p.contains(0.5, 0.0) && m.contains(-0.5, 0.0));
        assert_eq!((p.lo, p.hi), (0.25, 0.625));
        assert_eq!((m.lo, m.hi), (-0.75, -0.375));
        // the closed-form q-part sits inside the bound's q-range at a = 2
        let dq = dq_db_at_b0(2.0);
        assert!(0.5 - dq >= p.lo && 0.5 - dq <= p.hi);
    }

    #[test]
    fn cones() {
        let c = monotone_cone(2.0, DEFAULT_CONE_MARGIN).unwrap();
        assert!((c.n1 - 0.625 / 0.75).abs() < 1e-5 && (c.n2 - 1.0).abs() < 1e-5);
        assert!(matches!(
            monotone_cone(1.25, DEFAULT_CONE_MARGIN),
            Err(LoziError::DegenerateBounds { .. })
        ));
        let rows = cone_table(1.2, 40, DEFAULT_CONE_MARGIN).unwrap();
        let live: Vec<(f64, f64)> = rows.iter().filter_map(|r| r.cone).collect();
        assert!(live.len() > 20 && rows[0].cone.is_none());
        for w in live.windows(2) {
            assert!(
                w[1].0 <= w[0].0 && w[1].1 <= w[0].1,
                "N should shrink as a grows"
            );
        }
    }

    #[test]
    fn fd_step_halving() {
        let w = word(vec![P, M, M, P, M, P, P, M, M, M, P, P, M, P], 1.7, 200);
        let params = Params::new(1.7, 0.0);
        for dir in [(1.0f64, 0.0), (0.0, 1.0), (0.6, -0.8)] {
            let fd = fd_derivative(FdTarget::PMinusQ, &w, &params, dir, 1e-4).unwrap();
            assert!(fd.truncation < 1e-6, "{fd:?}");
            let fine = fd_derivative(FdTarget::PMinusQ, &w, &params, dir, 1e-6).unwrap();
            assert!((fd.richardson - fine.value).abs() < 1e-8, "{fd:?} {fine:?}");
            assert!((fd.value - fine.value).abs() <= 2.0 * fd.truncation + 1e-8);
        }
        assert!(matches!(
            fd_derivative(
                FdTarget::P,
                &w,
                &Params::new(1.0 + 1e-7, 0.0),
                (1.0, 0.0),
                1e-6
            ),
            Err(LoziError::NotHyperbolic { .. })
        ));
    }

    #[test]
    fn small_sweep_within_bounds() {
        for a in [1.3, 2.0] {
            let r = bound_sweep(a, 8, 200, DEFAULT_FD_STEP).unwrap();
            assert_eq!(r.words, 256);
            assert!(r.within(1e-3), "{r:?}");
            assert!(r.range_b.0 < 0.0);
        }
    }

    #[test]
    fn q_b_derivative_vanishes_on_special_head_at_two() {
        let w = word(vec![P; 20], 2.0, 200);
        let fd =
            fd_derivative(FdTarget::Q, &w, &Params::new(2.0f64, 0.0), (0.0, 1.0), 1e-6).unwrap();
        assert!(fd.value.abs() < 1e-6, "{fd:?}");
    }
}
