//! Pruning functions `p`, `q` of hyperbolic Lozi maps, cylinder
//! classification against the pruning pair, rasters of the primary pruned
//! region, and entropy brackets from admissible-word counts.

mod cylinder;
mod entropy;
mod raster;
mod series;

pub use cylinder::{classify_cylinder, eval_pq_cylinder, window_intervals, Verdict, WindowScanner};
pub use entropy::{admissible_word_count, entropy_estimate, EntropyBracket, WordCount};
pub use raster::{pruned_region_raster, Raster, DEFAULT_CELL_LIMIT};
pub use series::{
    closed_form_q, closed_form_q_for, closed_form_q_literal, eval_p, eval_q, eval_r, eval_s,
    BoundedValue,
};

use crate::error::{LoziError, Result};
use crate::interval::Interval;
use crate::scalar::Real;

/// A point `(a, b)` of the Lozi parameter plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> Params<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    /// `a > 1 + |b|`.
    pub fn is_hyperbolic(&self) -> bool {
        self.a > T::one() + self.b.abs()
    }

    pub fn require_hyperbolic(&self) -> Result<()> {
        if self.is_hyperbolic() {
            Ok(())
        } else {
            Err(LoziError::NotHyperbolic {
                a: self.a.to_f64_lossy(),
                b: self.b.to_f64_lossy(),
            })
        }
    }

    pub fn to_f64(&self) -> Params<f64> {
        Params::new(self.a.to_f64_lossy(), self.b.to_f64_lossy())
    }
}

/// Geometric majorants shared by every evaluator.
///
/// `m` is the smallest `M` with `|1/(±a + b x)| <= M` whenever `|x| <= M`,
/// i.e. the small root of `|b| M^2 - a M + 1 = 0`. It never exceeds
/// `1/(a - |b|)` and is below 1 on the hyperbolic region.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Majorants<T> {
    pub a: T,
    pub b: T,
    /// Bound on every `|s_n|`, `|r_n|`.
    pub m: T,
    /// Lipschitz factor `|b| m^2` of one continued-fraction level.
    pub rho: T,
    /// Ratio `|b| m` of consecutive terms of `p`.
    pub p_ratio: T,
    /// `p` lies in `1 ± p_spread`.
    pub p_spread: T,
    /// `|q| <= q_bound`.
    pub q_bound: T,
}

impl<T: Real> Majorants<T> {
    pub fn new(params: &Params<T>) -> Result<Self> {
        params.require_hyperbolic()?;
        let (a, b) = (params.a, params.b);
        let four = T::lit(4.0);
        let two = T::lit(2.0);
        let m = two / (a + (a * a - four * b.abs()).sqrt());
        let rho = b.abs() * m * m;
        let p_ratio = b.abs() * m;
        Ok(Self {
            a,
            b,
            m,
            rho,
            p_ratio,
            p_spread: p_ratio / (T::one() - p_ratio),
            q_bound: m / (T::one() - m),
        })
    }

    pub fn s_box(&self) -> Interval<T> {
        Interval::symmetric(self.m)
    }

    pub fn p_box(&self) -> Interval<T> {
        Interval::around(T::one(), self.p_spread)
    }

    pub fn q_box(&self) -> Interval<T> {
        Interval::symmetric(self.q_bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_region() {
        assert!(Params::new(2.0, 0.0).is_hyperbolic());
        assert!(Params::new(1.7, 0.5).is_hyperbolic());
        assert!(!Params::new(1.5, 0.5).is_hyperbolic());
        assert!(!Params::new(1.0, -0.1).is_hyperbolic());
        assert!(matches!(
            Params::new(1.2, 0.3).require_hyperbolic(),
            Err(LoziError::NotHyperbolic { .. })
        ));
    }

    #[test]
    fn majorant_is_self_consistent_and_tighter_than_naive() {
        for &(a, b) in &[
            (2.0, 0.0),
            (1.7, 0.5),
            (1.05, 0.04),
            (3.0, -0.9),
            (5.0, 3.5),
        ] {
            let k = Majorants::new(&Params::new(a, b)).unwrap();
            // M = 1 / (a - |b| M)
            assert!((k.m * (a - f64::abs(b) * k.m) - 1.0).abs() < 1e-12);
            assert!(k.m <= 1.0 / (a - f64::abs(b)) + 1e-15);
            assert!(k.m < 1.0 && k.rho < 1.0 && k.p_ratio < 1.0);
        }
    }
}
