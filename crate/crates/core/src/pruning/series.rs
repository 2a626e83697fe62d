//! Depth-truncated evaluation of `s_n`, `r_n`, `p` and `q` with analytic
//! truncation radii.

use super::{Majorants, Params};
use crate::error::{LoziError, Result};
use crate::interval::Interval;
use crate::scalar::Real;
use crate::symbolic::{Symbol, Word};

/// A value with a radius such that the exact quantity lies in
/// `[value - err, value + err]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundedValue<T> {
    pub value: T,
    pub err: T,
}

impl<T: Real> BoundedValue<T> {
    pub fn exact(value: T) -> Self {
        Self {
            value,
            err: T::zero(),
        }
    }

    pub fn interval(&self) -> Interval<T> {
        Interval::around(self.value, self.err)
    }

    pub fn contains(&self, x: T) -> bool {
        (x - self.value).abs() <= self.err
    }
}

/// Continued fraction `1/(c ε_k + b/(c ε_{k-1} + …))` over `syms`, listed
/// innermost first, with the value beyond the last symbol taken as zero.
fn fold_fraction<T: Real>(c: T, b: T, syms: impl Iterator<Item = Symbol>) -> T {
    syms.fold(T::zero(), |x, e| T::one() / (c * e.value::<T>() + b * x))
}

fn tail_needed(w: &Word, needed: usize) -> Result<()> {
    if w.tail_len() < needed {
        return Err(LoziError::InsufficientWord {
            side: "tail",
            needed,
            have: w.tail_len(),
        });
    }
    Ok(())
}

fn head_needed(w: &Word, needed: usize) -> Result<()> {
    if w.head_len() < needed {
        return Err(LoziError::InsufficientWord {
            side: "head",
            needed,
            have: w.head_len(),
        });
    }
    Ok(())
}

/// `s_n` (for `n <= -1`) from `ε_n, …, ε_{n-depth}`.
pub fn eval_s<T: Real>(
    w: &Word,
    n: isize,
    depth: usize,
    params: &Params<T>,
) -> Result<BoundedValue<T>> {
    assert!(n <= -1, "s_n is indexed by tail positions");
    let k = Majorants::new(params)?;
    let start = (-n) as usize;
    tail_needed(w, start + depth)?;
    let m = w.tail_len();
    // tail[m - start] is ε_n; innermost symbol ε_{n-depth} first
    let syms = (0..=depth).rev().map(|d| w.tail[m - start - d]);
    let value = fold_fraction(-k.a, k.b, syms);
    Ok(BoundedValue {
        value,
        err: k.m * k.rho.powi(depth as i32 + 1),
    })
}

/// `r_n` (for `n >= 0`) from `ε_n, …, ε_{n+depth}`.
pub fn eval_r<T: Real>(
    w: &Word,
    n: usize,
    depth: usize,
    params: &Params<T>,
) -> Result<BoundedValue<T>> {
    let k = Majorants::new(params)?;
    head_needed(w, n + depth + 1)?;
    let syms = (n..=n + depth).rev().map(|i| w.head[i]);
    let value = fold_fraction(k.a, k.b, syms);
    Ok(BoundedValue {
        value,
        err: k.m * k.rho.powi(depth as i32 + 1),
    })
}

/// Every `s_j` (`j = -1, -2, …, -m`) using the whole tail, with radii.
/// Index `i` of the result holds `s_{-(i+1)}`.
fn all_s<T: Real>(w: &Word, k: &Majorants<T>) -> Vec<(T, T)> {
    let m = w.tail_len();
    let mut out = vec![(T::zero(), T::zero()); m];
    let mut x = T::zero();
    // left to right: ε_{-m} is innermost for every s_j
    for (used, idx) in (0..m).enumerate() {
        let e = w.tail[idx].value::<T>();
        x = T::one() / (-k.a * e + k.b * x);
        let j = m - idx; // s_{-j}
        out[j - 1] = (x, k.m * k.rho.powi(used as i32 + 1));
    }
    out
}

/// Every `r_j` (`j = 0 … n-1`) using the whole head, with radii.
fn all_r<T: Real>(w: &Word, k: &Majorants<T>) -> Vec<(T, T)> {
    let n = w.head_len();
    let mut out = vec![(T::zero(), T::zero()); n];
    let mut x = T::zero();
    for (used, j) in (0..n).rev().enumerate() {
        let e = w.head[j].value::<T>();
        x = T::one() / (k.a * e + k.b * x);
        out[j] = (x, k.m * k.rho.powi(used as i32 + 1));
    }
    out
}

/// Alternating product series `Σ_k sign^k c^k Π_{i<=k} x_i` with radius.
///
/// `factors[i] = (x_i, err_i)`, `|x_i| <= m`, `c` is the per-term scalar,
/// and `ratio = |c| m < 1` bounds the omitted geometric tail.
fn product_series<T: Real>(
    lead: T,
    factors: &[(T, T)],
    c: T,
    m: T,
    ratio: T,
    terms: usize,
) -> BoundedValue<T> {
    let mut value = lead;
    let mut abs_sum = lead.abs();
    let mut err = T::zero();
    let mut prod = T::one();
    let mut prod_err_sum = T::zero();
    let mut c_pow = T::one();
    for (k, &(x, e)) in factors.iter().take(terms).enumerate() {
        prod = prod * x;
        prod_err_sum = prod_err_sum + e;
        c_pow = c_pow * c;
        let term = c_pow * prod;
        value = value + term;
        abs_sum = abs_sum + term.abs();
        // |Π x - Π x̃| <= m^{k} Σ err for k+1 factors bounded by m
        err = err + c_pow.abs() * m.powi(k as i32) * prod_err_sum;
    }
    let tail = ratio.powi(terms as i32 + 1) / (T::one() - ratio);
    let rounding = T::lit(4.0) * T::lit((terms + 2) as f64) * T::eps() * abs_sum;
    BoundedValue {
        value,
        err: err + tail + rounding,
    }
}

/// `p = 1 - b s_{-2} + b^2 s_{-2} s_{-3} - …` summed through the `b^depth`
/// term.
pub fn eval_p<T: Real>(w: &Word, depth: usize, params: &Params<T>) -> Result<BoundedValue<T>> {
    let k = Majorants::new(params)?;
    tail_needed(w, depth + 2)?;
    let s = all_s(w, &k);
    // factors s_{-2}, s_{-3}, …
    Ok(product_series(
        T::one(),
        &s[1..],
        -k.b,
        k.m,
        k.p_ratio,
        depth,
    ))
}

/// `q = r_0 - r_0 r_1 + r_0 r_1 r_2 - …` summed through the `r_0…r_depth`
/// term.
pub fn eval_q<T: Real>(w: &Word, depth: usize, params: &Params<T>) -> Result<BoundedValue<T>> {
    let k = Majorants::new(params)?;
    head_needed(w, depth + 1)?;
    let r = all_r(w, &k);
    let (r0, e0) = r[0];
    // q = r_0 (1 - r_1 + r_1 r_2 - …); the inner series has lead 1
    let inner = product_series(T::one(), &r[1..], -T::one(), k.m, k.m, depth);
    let value = r0 * inner.value;
    let inner_abs = inner.value.abs() + inner.err;
    Ok(BoundedValue {
        value,
        err: k.m * inner.err + e0 * inner_abs + T::eps() * value.abs(),
    })
}

/// `q` on the head `(+1, -1, -1, …)` in closed form,
/// `b / ((a + x)(b + x))` with `x = (a - sqrt(a^2 + 4b)) / 2`.
///
/// Evaluated as `1 / ((a + x)(1 + x/b))` with `x/b = -2 / (a + sqrt(a^2+4b))`,
/// which is the same value and stays finite at `b = 0` (where it equals
/// `1/(a-1)`).
pub fn closed_form_q<T: Real>(params: &Params<T>) -> Result<T> {
    params.require_hyperbolic()?;
    let (a, b) = (params.a, params.b);
    let root = (a * a + T::lit(4.0) * b).sqrt();
    let x_over_b = -T::lit(2.0) / (a + root);
    let x = b * x_over_b;
    Ok(T::one() / ((a + x) * (T::one() + x_over_b)))
}

/// The literal closed form; only meaningful for `b != 0`.
pub fn closed_form_q_literal<T: Real>(params: &Params<T>) -> T {
    let (a, b) = (params.a, params.b);
    let x = (a - (a * a + T::lit(4.0) * b).sqrt()) / T::lit(2.0);
    b / ((a + x) * (b + x))
}

/// [`closed_form_q`] guarded by a check that `w`'s head is `(+1,-1,-1,…)`.
pub fn closed_form_q_for<T: Real>(w: &Word, params: &Params<T>) -> Result<T> {
    let ok = w
        .head
        .iter()
        .enumerate()
        .all(|(i, &s)| s == if i == 0 { Symbol::Plus } else { Symbol::Minus });
    if !ok || w.head.is_empty() {
        return Err(LoziError::WrongHead);
    }
    closed_form_q(params)
}
