//! Interval enclosures of `p - q` over cylinders and three-valued
//! classification against the primary pruned region.
//!
//! Unknown symbols beyond a word are replaced by the invariant boxes
//! `|s|, |r| <= M`, `p ∈ 1 ± |b|M/(1-|b|M)`, `|q| <= M/(1-M)`, and the
//! recursions `s ← 1/(-aε + b s)`, `P ← 1 - b s P`, `r ← 1/(aε + b r)`,
//! `Q ← r (1 - Q)` are run in interval arithmetic toward the dot.

use super::{Majorants, Params};
use crate::error::Result;
use crate::interval::Interval;
use crate::scalar::Real;
use crate::symbolic::{Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `p - q < 0` on the whole cylinder.
    CertifiedPruned,
    /// `p - q >= 0` on the whole cylinder at every tested dot position.
    CertifiedAdmissibleWindow,
    Unknown,
}

impl Verdict {
    /// Grey level used in PGM rasters.
    pub fn pgm_level(self) -> u8 {
        match self {
            Verdict::CertifiedPruned => 0,
            Verdict::Unknown => 128,
            Verdict::CertifiedAdmissibleWindow => 255,
        }
    }
}

fn narrow<T: Real>(x: Interval<T>, bound: &Interval<T>) -> Interval<T> {
    x.intersect(bound).unwrap_or(x)
}

/// Reusable evaluator of `p - q` at every dot position of a flat word.
#[derive(Clone, Debug)]
pub struct WindowScanner<T> {
    k: Majorants<T>,
    p_at: Vec<Interval<T>>,
    q_at: Vec<Interval<T>>,
}

impl<T: Real> WindowScanner<T> {
    pub fn new(params: &Params<T>) -> Result<Self> {
        Ok(Self {
            k: Majorants::new(params)?,
            p_at: Vec::new(),
            q_at: Vec::new(),
        })
    }

    fn tail_step(&self, s: Interval<T>, p: Interval<T>, e: Symbol) -> (Interval<T>, Interval<T>) {
        let k = &self.k;
        let den = s.scale(k.b).shift(-k.a * e.value::<T>());
        let s = match den.recip() {
            Some(r) => narrow(r, &k.s_box()),
            None => k.s_box(),
        };
        let p = narrow(
            (s.scale(k.b) * p).scale(-T::one()).shift(T::one()),
            &k.p_box(),
        );
        (s, p)
    }

    fn head_step(&self, r: Interval<T>, q: Interval<T>, e: Symbol) -> (Interval<T>, Interval<T>) {
        let k = &self.k;
        let den = r.scale(k.b).shift(k.a * e.value::<T>());
        let r = match den.recip() {
            Some(x) => narrow(x, &k.s_box()),
            None => k.s_box(),
        };
        let q = narrow(r * q.scale(-T::one()).shift(T::one()), &k.q_box());
        (r, q)
    }

    /// Enclosure of `p` from the tail symbols `syms` (left to right, the
    /// last one being `ε_{-1}`, which `p` does not read).
    fn p_from(&self, syms: &[Symbol]) -> Interval<T> {
        let used = syms.len().saturating_sub(1);
        let (mut s, mut p) = (self.k.s_box(), self.k.p_box());
        for &e in &syms[..used] {
            (s, p) = self.tail_step(s, p, e);
        }
        p
    }

    /// Enclosure of `q` from the head symbols `syms` (left to right).
    fn q_from(&self, syms: &[Symbol]) -> Interval<T> {
        let (mut r, mut q) = (self.k.s_box(), self.k.q_box());
        for &e in syms.iter().rev() {
            (r, q) = self.head_step(r, q, e);
        }
        q
    }

    /// `p - q` enclosures for every dot position `0..=all.len()`, each using
    /// at most `depth` symbols on either side of the dot.
    pub fn scan(&mut self, all: &[Symbol], depth: usize) -> Vec<Interval<T>> {
        let mut out = Vec::with_capacity(all.len() + 1);
        self.scan_into(all, depth, &mut out);
        out
    }

    pub fn scan_into(&mut self, all: &[Symbol], depth: usize, out: &mut Vec<Interval<T>>) {
        let len = all.len();
        out.clear();
        if depth >= len {
            self.p_at.clear();
            self.p_at.resize(len + 1, self.k.p_box());
            let (mut s, mut p) = (self.k.s_box(), self.k.p_box());
            for (idx, &e) in all.iter().enumerate().take(len.saturating_sub(1)) {
                (s, p) = self.tail_step(s, p, e);
                self.p_at[idx + 2] = p;
            }
            self.q_at.clear();
            self.q_at.resize(len + 1, self.k.q_box());
            let (mut r, mut q) = (self.k.s_box(), self.k.q_box());
            for idx in (0..len).rev() {
                (r, q) = self.head_step(r, q, all[idx]);
                self.q_at[idx] = q;
            }
            out.extend(self.p_at.iter().zip(&self.q_at).map(|(&p, &q)| p - q));
        } else {
            for dot in 0..=len {
                let lo = dot.saturating_sub(depth + 1);
                let p = self.p_from(&all[lo..dot]);
                let hi = (dot + depth).min(len);
                let q = self.q_from(&all[dot..hi]);
                out.push(p - q);
            }
        }
    }

    /// Classify the cylinder of `all` with its dot at `dot`.
    pub fn classify(
        &mut self,
        all: &[Symbol],
        dot: usize,
        depth: usize,
        shift_window: usize,
        buf: &mut Vec<Interval<T>>,
    ) -> Verdict {
        self.scan_into(all, depth, buf);
        verdict_from_windows(buf, dot, shift_window)
    }
}

pub(crate) fn verdict_from_windows<T: Real>(
    windows: &[Interval<T>],
    dot: usize,
    shift_window: usize,
) -> Verdict {
    if windows[dot].hi < T::zero() {
        return Verdict::CertifiedPruned;
    }
    let lo = dot.saturating_sub(shift_window);
    let hi = (dot + shift_window).min(windows.len() - 1);
    if windows[lo..=hi].iter().all(|w| w.lo >= T::zero()) {
        Verdict::CertifiedAdmissibleWindow
    } else {
        Verdict::Unknown
    }
}

/// Enclosure of `p - q` at every dot position of `w`'s symbol string.
pub fn window_intervals<T: Real>(
    w: &Word,
    depth: usize,
    params: &Params<T>,
) -> Result<Vec<Interval<T>>> {
    let (all, _) = w.symbols();
    Ok(WindowScanner::new(params)?.scan(&all, depth))
}

/// `[lo, hi]` containing `(p - q)(ε)(a, b)` for every bi-infinite `ε`
/// extending `w`, using at most `depth` symbols on each side of the dot.
pub fn eval_pq_cylinder<T: Real>(
    w: &Word,
    depth: usize,
    params: &Params<T>,
) -> Result<Interval<T>> {
    let scanner = WindowScanner::new(params)?;
    let tail_from = w.tail_len().saturating_sub(depth + 1);
    let p = scanner.p_from(&w.tail[tail_from..]);
    let q = scanner.q_from(&w.head[..depth.min(w.head_len())]);
    Ok(p - q)
}

/// Classify the cylinder of `w` against the pruning pair, testing shifted
/// dot positions up to `shift_window` places away that stay inside `w`.
pub fn classify_cylinder<T: Real>(
    w: &Word,
    depth: usize,
    shift_window: usize,
    params: &Params<T>,
) -> Result<Verdict> {
    let (all, dot) = w.symbols();
    let mut scanner = WindowScanner::new(params)?;
    let mut buf = Vec::new();
    Ok(scanner.classify(&all, dot, depth, shift_window, &mut buf))
}
