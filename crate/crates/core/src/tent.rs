//! Tent map `T_a(x) = 1 - a|x|`: orbits, the kneading invariant, the two
//! kneading identities, and lap-number entropy.

use crate::error::{LoziError, Result};
use crate::scalar::{Real, Scalar};
use crate::symbolic::Symbol;

pub fn tent<T: Scalar>(a: &T, x: &T) -> T {
    T::one() - a.clone() * x.abs()
}

/// `x0, T(x0), …` (`n` values).
pub fn tent_orbit<T: Scalar>(a: &T, x0: T, n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n);
    let mut x = x0;
    for _ in 0..n {
        let next = tent(a, &x);
        out.push(x);
        x = next;
    }
    out
}

/// Itinerary of the critical value `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kneading {
    /// Signs of `T^i(1)`; `+1` at boundary hits.
    pub symbols: Vec<Symbol>,
    /// Indices with `|T^i(1)| <= tol`, where either sign is valid.
    pub boundary_hits: Vec<usize>,
}

impl Kneading {
    /// Every itinerary obtained by choosing a sign at each boundary hit.
    pub fn itineraries(&self) -> Result<Vec<Vec<Symbol>>> {
        let hits = self.boundary_hits.len();
        if hits > 16 {
            return Err(LoziError::BudgetExceeded(format!(
                "{hits} boundary hits would give 2^{hits} itineraries"
            )));
        }
        Ok((0..1u32 << hits)
            .map(|mask| {
                let mut s = self.symbols.clone();
                for (bit, &i) in self.boundary_hits.iter().enumerate() {
                    s[i] = Symbol::from_sign(mask >> bit & 1 == 0);
                }
                s
            })
            .collect())
    }
}

fn check_range<T: Scalar>(a: &T) -> Result<()> {
    let two = T::one() + T::one();
    if *a > T::one() && *a <= two {
        Ok(())
    } else {
        Err(LoziError::WrongParams(format!(
            "kneading needs 1 < a <= 2, got {}",
            a.to_f64_lossy()
        )))
    }
}

/// `κ(a)` to `n` symbols.
pub fn kneading<T: Scalar>(a: &T, n: usize, tol: &T) -> Result<Kneading> {
    check_range(a)?;
    let mut symbols = Vec::with_capacity(n);
    let mut boundary_hits = Vec::new();
    for (i, x) in tent_orbit(a, T::one(), n).into_iter().enumerate() {
        if x.abs() <= *tol {
            boundary_hits.push(i);
            symbols.push(Symbol::Plus);
        } else {
            symbols.push(Symbol::from_sign(x > T::zero()));
        }
    }
    Ok(Kneading {
        symbols,
        boundary_hits,
    })
}

/// `κ(a)` computed in exact arithmetic on the binary value of `a`.
///
/// Float orbits of `1` lose all accuracy after roughly `52 / log2(a)`
/// steps; this version stays exact for any `n`, with boundary hits only
/// where the orbit is exactly zero.
pub fn kneading_exact(a: f64, n: usize) -> Result<Kneading> {
    let r = crate::Rational::from_float(a)
        .ok_or_else(|| LoziError::WrongParams(format!("non-finite a = {a}")))?;
    kneading(&r, n, &crate::Rational::from_integer(0.into()))
}

/// Default boundary tolerance for floating kneading computations.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `|Σ_{i<n} (-1)^i ε_0…ε_{i-1} / a^i|` for a kneading prefix.
pub fn check_identity_sum<T: Scalar>(a: &T, prefix: &[Symbol], n: usize) -> T {
    assert!(prefix.len() + 1 >= n, "prefix too short");
    let mut sum = T::zero();
    let mut term = T::one(); // (-1)^i ε_0…ε_{i-1} / a^i
    for i in 0..n {
        sum = sum + term.clone();
        if i < prefix.len() {
            term = -term * prefix[i].value::<T>() / a.clone();
        }
    }
    sum.abs()
}

/// `a^{-n} · a/(a-1)`, the tail bound for [`check_identity_sum`].
pub fn identity_sum_bound<T: Scalar>(a: &T, n: usize) -> T {
    let mut p = T::one();
    for _ in 0..n {
        p = p / a.clone();
    }
    p * a.clone() / (a.clone() - T::one())
}

/// Residual of the shifted identity: the first `n` terms of
/// `Σ_j (-1)^{i+j} ε_0…ε_{i+j} / a^{i+j+1}` minus
/// `(-1)^i ε_0…ε_{i-1} T^i(1) / a^i`.
pub fn check_identity_shifted<T: Scalar>(a: &T, prefix: &[Symbol], i: usize, n: usize) -> T {
    assert!(prefix.len() >= i + n, "prefix too short");
    // c = (-1)^i ε_0…ε_{i-1} / a^i
    let mut c = T::one();
    for &e in &prefix[..i] {
        c = -c * e.value::<T>() / a.clone();
    }
    let t_i = tent_orbit(a, T::one(), i + 1)
        .pop()
        .expect("non-empty orbit");
    let rhs = c.clone() * t_i;
    let mut sum = T::zero();
    let mut term = c * prefix[i].value::<T>() / a.clone();
    for j in 0..n {
        sum = sum + term.clone();
        if i + j + 1 < prefix.len() {
            term = -term * prefix[i + j + 1].value::<T>() / a.clone();
        }
    }
    (sum - rhs).abs()
}

/// `a^{-(i+n)} / (a-1)`, the tail bound for [`check_identity_shifted`].
pub fn identity_shifted_bound<T: Scalar>(a: &T, i: usize, n: usize) -> T {
    identity_sum_bound(a, i + n) / a.clone()
}

/// Lap number of `T_a^n` on the core `[1 - a, 1]`.
///
/// Branches are tracked by their image intervals; a branch whose image
/// straddles 0 splits into two at the preimage of the turning point. Equal
/// images (within `1e-9`) are merged with multiplicity.
pub fn lap_number<T: Real>(a: T, n: usize) -> Result<u128> {
    check_range(&a)?;
    if n > 120 {
        return Err(LoziError::BudgetExceeded(format!(
            "lap count for n = {n} overflows"
        )));
    }
    let merge_tol = T::lit(1e-9);
    let mut pieces: Vec<(T, T, u128)> = vec![(T::one() - a, T::one(), 1)];
    for _ in 0..n {
        let mut next: Vec<(T, T, u128)> = Vec::with_capacity(pieces.len() * 2);
        let mut push = |lo: T, hi: T, c: u128| {
            if hi - lo <= T::zero() {
                return;
            }
            if let Some(e) = next
                .iter_mut()
                .find(|e| (e.0 - lo).abs() <= merge_tol && (e.1 - hi).abs() <= merge_tol)
            {
                e.2 += c;
            } else {
                next.push((lo, hi, c));
            }
        };
        for &(lo, hi, c) in &pieces {
            let t = |x: T| T::one() - a * x.abs();
            if lo < T::zero() && hi > T::zero() {
                push(t(lo), T::one(), c);
                push(t(hi), T::one(), c);
            } else {
                let (u, v) = (t(lo), t(hi));
                push(u.min(v), u.max(v), c);
            }
        }
        pieces = next;
    }
    Ok(pieces.iter().map(|p| p.2).sum())
}

/// `(1/n) log lap(T_a^n)`.
pub fn tent_entropy_lap<T: Real>(a: T, n: usize) -> Result<f64> {
    Ok((lap_number(a, n)? as f64).ln() / n as f64)
}

/// `log(lap(n) / lap(m)) / (n - m)` with `m = n/2`.
///
/// `lap(n) ~ C a^n`, and near `a = 1` the constant dominates the plain
/// average for any affordable `n`; the ratio cancels it.
pub fn tent_entropy_lap_ratio<T: Real>(a: T, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(LoziError::WrongParams("ratio estimate needs n >= 2".into()));
    }
    let m = n / 2;
    let (hi, lo) = (lap_number(a, n)? as f64, lap_number(a, m)? as f64);
    Ok((hi / lo).ln() / (n - m) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;
    use Symbol::{Minus as M, Plus as P};

    #[test]
    fn orbit_of_one_at_two() {
        assert_eq!(tent_orbit(&2.0, 1.0, 5), vec![1.0, -1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn fixed_point_orbit_is_constant() {
        let a = ratio(17, 10);
        let x = Rational::from_integer(1.into()) / (Rational::from_integer(1.into()) + a.clone());
        assert!(tent_orbit(&a, x.clone(), 10).iter().all(|y| *y == x));
    }

    #[test]
    fn golden_mean_hits_the_turning_point() {
        let a = (1.0 + 5f64.sqrt()) / 2.0;
        let orbit = tent_orbit(&a, 1.0, 3);
        assert!(orbit[2].abs() < 1e-15);
        let k = kneading(&a, 6, &BOUNDARY_TOL).unwrap();
        assert!(k.boundary_hits.contains(&2));
        let its = k.itineraries().unwrap();
        assert!(its.len() >= 2);
        assert!(its.iter().any(|s| s[2] == M) && its.iter().any(|s| s[2] == P));
    }

    #[test]
    fn kneading_starts_plus_minus() {
        let k2 = kneading(&2.0, 6, &BOUNDARY_TOL).unwrap();
        assert_eq!(k2.symbols, vec![P, M, M, M, M, M]);
        for a in [1.05, 1.3, 1.5, 1.9] {
            let k = kneading(&a, 2, &BOUNDARY_TOL).unwrap();
            assert_eq!(k.symbols, vec![P, M]);
        }
        assert!(kneading(&2.5, 3, &BOUNDARY_TOL).is_err());
    }

    #[test]
    fn float_kneading_matches_exact_rational() {
        let exact = kneading(&ratio(17, 10), 40, &Rational::from_integer(0.into())).unwrap();
        let float = kneading(&1.7, 40, &BOUNDARY_TOL).unwrap();
        assert_eq!(exact.symbols, float.symbols);
        let signs: Vec<Symbol> = tent_orbit(&1.7, 1.0, 40)
            .iter()
            .map(|&x| Symbol::from_sign(x > 0.0))
            .collect();
        assert_eq!(float.symbols, signs);
    }

    #[test]
    fn exact_kneading_outlasts_float() {
        let exact = kneading_exact(1.3, 300).unwrap();
        let float = kneading(&1.3, 300, &BOUNDARY_TOL).unwrap();
        assert_eq!(exact.symbols[..100], float.symbols[..100]);
        assert!(exact.boundary_hits.is_empty());
        assert_eq!(kneading_exact(2.0, 5).unwrap().symbols, vec![P, M, M, M, M]);
    }

    #[test]
    fn identity_sum_partials() {
        let k = kneading(&2.0, 50, &BOUNDARY_TOL).unwrap();
        // 1 - 1/2 - 1/4 - …
        assert_eq!(check_identity_sum(&2.0, &k.symbols, 1), 1.0);
        assert_eq!(check_identity_sum(&2.0, &k.symbols, 3), 0.25);
        let k = kneading(&1.5, 40, &BOUNDARY_TOL).unwrap();
        let r = check_identity_sum(&1.5, &k.symbols, 40);
        assert!(r <= identity_sum_bound(&1.5, 40), "{r}");
    }

    #[test]
    fn identity_sum_is_exact_in_rationals() {
        let a = ratio(13, 10);
        let k = kneading(&a, 30, &Rational::from_integer(0.into())).unwrap();
        for n in [5, 10, 30] {
            assert!(check_identity_sum(&a, &k.symbols, n) <= identity_sum_bound(&a, n));
        }
    }

    #[test]
    fn shifted_identity() {
        let k = kneading(&2.0, 60, &BOUNDARY_TOL).unwrap();
        // i = 0: Σ_j (-1)^j ε_0…ε_j / 2^{j+1} = T^0(1) = 1
        assert!(check_identity_shifted(&2.0, &k.symbols, 0, 50) < 1e-14);
        // i = 1, exact sums at a = 2
        let r = check_identity_shifted(&2.0, &k.symbols, 1, 10);
        assert!(r <= identity_shifted_bound(&2.0, 1, 10));
        for a in [1.2, 1.45, 1.7, 1.95] {
            let k = kneading(&a, 50, &BOUNDARY_TOL).unwrap();
            for i in 0..=5 {
                let r = check_identity_shifted(&a, &k.symbols, i, 40);
                assert!(
                    r <= identity_shifted_bound(&a, i, 40) + 1e-15,
                    "a={a} i={i} r={r}"
                );
            }
        }
    }

    #[test]
    fn lap_counts() {
        assert_eq!(lap_number(2.0, 16).unwrap(), 1 << 16);
        assert!((tent_entropy_lap(2.0, 16).unwrap() - 2f64.ln()).abs() < 1e-2);
        // counts from a 4e6-point grid count of monotone pieces
        let grid = [
            (1, 2),
            (2, 3),
            (3, 5),
            (4, 7),
            (5, 10),
            (8, 23),
            (12, 59),
            (16, 135),
            (24, 613),
        ];
        for (n, laps) in grid {
            assert_eq!(lap_number(1.2, n).unwrap(), laps, "n={n}");
        }
        let h = tent_entropy_lap(1.2, 24).unwrap();
        assert!((h - 613f64.ln() / 24.0).abs() < 1e-15);
        let h = tent_entropy_lap_ratio(1.2, 24).unwrap();
        assert!((h - 1.2f64.ln()).abs() < 0.05, "{h}");
        for a in [1.5f64, 1.7, 2.0] {
            let h = tent_entropy_lap_ratio(a, 24).unwrap();
            assert!((h - a.ln()).abs() < 0.02, "a={a} {h}");
        }
        for a in [1.3, 1.7] {
            let l: Vec<u128> = (1..=14).map(|n| lap_number(a, n).unwrap()).collect();
            for n in 1..=7 {
                for m in 1..=7 {
                    assert!(l[n + m - 1] <= l[n - 1] * l[m - 1]);
                }
            }
        }
    }
}
