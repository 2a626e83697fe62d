use rayon::prelude::*;

use super::homoclinic::{homoclinic_with, Witness};
use super::{
    fixed_data, jacobian, lozi_apply_n, mat_mul, Growth, Homoclinic, MapParams, PlanePoint,
};
use crate::error::{LoziError, Result};
use crate::scalar::Real;

/// Distance to the period-two orbit that counts as converged.
pub const CONVERGENCE_TOL: f64 = 1e-8;
/// Maximum applications of `L⁴` when testing convergence.
pub const MAX_L4_STEPS: usize = 10_000;
/// Sample points per unstable fundamental domain.
const SAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnalyticCase {
    /// `-1 <= b < 0`, `a <= b - 1`.
    I,
    /// `0 < b <= 1`, `a < 1 - b`.
    II,
    /// `0 < b <= 1`, `a = 1 - b`.
    III,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroEntropyVerdict {
    AnalyticZero(AnalyticCase),
    NumericZero,
    Homoclinic,
    Unknown,
}

impl ZeroEntropyVerdict {
    pub fn pgm_level(self) -> u8 {
        match self {
            Self::AnalyticZero(_) => 255,
            Self::NumericZero => 192,
            Self::Unknown => 128,
            Self::Homoclinic => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::AnalyticZero(AnalyticCase::I) => "analytic_zero_i",
            Self::AnalyticZero(AnalyticCase::II) => "analytic_zero_ii",
            Self::AnalyticZero(AnalyticCase::III) => "analytic_zero_iii",
            Self::NumericZero => "numeric_zero",
            Self::Homoclinic => "homoclinic",
            Self::Unknown => "unknown",
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Self::AnalyticZero(_) | Self::NumericZero)
    }
}

fn analytic_case<T: Real>(a: T, b: T) -> Option<AnalyticCase> {
    let one = T::one();
    if b >= -one && b < T::zero() && a <= b - one {
        Some(AnalyticCase::I)
    } else if b > T::zero() && b <= one && a < one - b {
        Some(AnalyticCase::II)
    } else if b > T::zero() && b <= one && a == one - b {
        Some(AnalyticCase::III)
    } else {
        None
    }
}

fn frobenius<T: Real>(m: &[[T; 2]; 2]) -> T {
    (m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1]).sqrt()
}

/// Whether some power `J^(2^j)` (`j <= 12`) of the derivative of `L⁴` at
/// `n1` has norm below 1, so `|q - n1|²` strictly decreases along that
/// power of `L⁴` on the affine piece around `n1`.
fn contracts_near_n1<T: Real>(params: &MapParams<T>) -> bool {
    let l2 = mat_mul(&jacobian(params, false), &jacobian(params, true));
    let mut m = mat_mul(&l2, &l2);
    for _ in 0..=12 {
        if frobenius(&m) < T::one() {
            return true;
        }
        m = mat_mul(&m, &m);
    }
    false
}

/// Both unstable branches of `p1` sampled on a fundamental domain and
/// followed under `L⁴` until they reach the period-two orbit.
fn unstable_converges<T: Real>(params: &MapParams<T>) -> Result<bool> {
    let data = fixed_data(params)?;
    let (Some(p1), Some(n1), Some(n2)) = (data.p1, data.n1, data.n2) else {
        return Ok(false);
    };
    let Some((_, u)) = p1.eigen else {
        return Ok(false);
    };
    if !data.period2_attracting || !p1.is_saddle() {
        return Ok(false);
    }
    let tol = T::lit(CONVERGENCE_TOL);
    let reach = T::lit(0.5) * p1.point.x / u.abs();
    for sign in [T::one(), -T::one()] {
        let dir = PlanePoint::new(-u, -T::one()) * sign;
        for i in 0..SAMPLES {
            // geometric spacing across [reach/u², reach)
            let frac = T::from_usize(i).expect("small") / T::from_usize(SAMPLES).expect("small");
            let t = reach * (u * u).powf(-frac);
            let mut q = p1.point + dir * t;
            let mut done = false;
            for _ in 0..MAX_L4_STEPS {
                q = lozi_apply_n(params, &q, 4);
                if q.dist(&n1).min(q.dist(&n2)) < tol {
                    done = true;
                    break;
                }
                if !(q.x.abs() < T::lit(1e6) && q.y.abs() < T::lit(1e6)) {
                    return Ok(false);
                }
            }
            if !done {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Zero-entropy verdict at `params` (`|b| <= 1`).
///
/// Analytic regions are decided by their exact inequalities; otherwise a
/// transversal homoclinic crossing of `p1`'s manifolds gives `Homoclinic`;
/// otherwise convergence of the unstable branches to an attracting
/// period-two orbit gives `NumericZero`. Touching contacts or anything else
/// give `Unknown`.
pub fn classify_zero_entropy<T: Real>(
    params: &MapParams<T>,
    arc_budget: T,
) -> Result<ZeroEntropyVerdict> {
    classify_with_witness(params, arc_budget).map(|(v, _)| v)
}

/// [`classify_zero_entropy`] together with the crossing point behind a
/// `Homoclinic` verdict.
pub fn classify_with_witness<T: Real>(
    params: &MapParams<T>,
    arc_budget: T,
) -> Result<(ZeroEntropyVerdict, Option<Witness<T>>)> {
    let (a, b) = (params.a, params.b);
    if b.abs() > T::one() {
        return Err(LoziError::WrongParams(format!(
            "classifier needs |b| <= 1, got b = {}",
            b.to_f64_lossy()
        )));
    }
    if let Some(case) = analytic_case(a, b) {
        return Ok((ZeroEntropyVerdict::AnalyticZero(case), None));
    }
    match homoclinic_with(params, &Growth::new(arc_budget)) {
        Ok(Homoclinic::Yes(w)) => return Ok((ZeroEntropyVerdict::Homoclinic, Some(w))),
        Ok(Homoclinic::Degenerate(_)) => return Ok((ZeroEntropyVerdict::Unknown, None)),
        Ok(Homoclinic::NoWithinBudget) | Err(LoziError::NoFixedPoint { .. }) => {}
        Err(e) => return Err(e),
    }
    if contracts_near_n1(params) && unstable_converges(params)? {
        Ok((ZeroEntropyVerdict::NumericZero, None))
    } else {
        Ok((ZeroEntropyVerdict::Unknown, None))
    }
}

/// Pixel-centred grid over `[a_lo, a_hi] × [b_lo, b_hi]`; row 0 is the
/// largest `b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanGrid {
    pub a_lo: f64,
    pub a_hi: f64,
    pub b_lo: f64,
    pub b_hi: f64,
    pub width: usize,
    pub height: usize,
}

impl ScanGrid {
    pub fn a_at(&self, col: usize) -> f64 {
        self.a_lo + (col as f64 + 0.5) * (self.a_hi - self.a_lo) / self.width as f64
    }

    pub fn b_at(&self, row: usize) -> f64 {
        self.b_hi - (row as f64 + 0.5) * (self.b_hi - self.b_lo) / self.height as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroScan {
    pub grid: ScanGrid,
    /// Row-major verdicts.
    pub cells: Vec<ZeroEntropyVerdict>,
    /// Crossing point for each `Homoclinic` cell.
    pub witnesses: Vec<Option<PlanePoint<f64>>>,
}

impl ZeroScan {
    pub fn get(&self, row: usize, col: usize) -> ZeroEntropyVerdict {
        self.cells[row * self.grid.width + col]
    }

    pub fn count(&self, v: ZeroEntropyVerdict) -> usize {
        self.cells.iter().filter(|&&c| c == v).count()
    }
}

/// Classifies every pixel centre in parallel; per-pixel errors become
/// `Unknown`.
pub fn scan_zero_entropy(grid: ScanGrid, arc_budget: f64) -> Result<ZeroScan> {
    if grid.b_lo.abs() > 1.0 || grid.b_hi.abs() > 1.0 {
        return Err(LoziError::WrongParams("scan needs |b| <= 1".into()));
    }
    if grid.width == 0 || grid.height == 0 {
        return Err(LoziError::WrongParams("empty scan grid".into()));
    }
    let (cells, witnesses) = (0..grid.width * grid.height)
        .into_par_iter()
        .map(|i| {
            let (row, col) = (i / grid.width, i % grid.width);
            let params = MapParams::new(grid.a_at(col), grid.b_at(row));
            match classify_with_witness(&params, arc_budget) {
                Ok((v, w)) => (v, w.map(|w| w.point)),
                Err(_) => (ZeroEntropyVerdict::Unknown, None),
            }
        })
        .unzip();
    Ok(ZeroScan {
        grid,
        cells,
        witnesses,
    })
}
