use rayon::prelude::*;

use super::cylinder::WindowScanner;
use super::Params;
use crate::error::{LoziError, Result};
use crate::scalar::Real;
use crate::symbolic::Word;

/// Admissible-word counts for blocks of one length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordCount {
    pub n: usize,
    /// Blocks whose every dot position is certified `p - q >= 0`.
    pub lower: u64,
    /// Blocks with no dot position certified `p - q < 0`.
    pub upper: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyBracket {
    pub h_lower: f64,
    pub h_upper: f64,
    pub counts: Vec<WordCount>,
}

const MAX_BLOCK_LEN: usize = 30;

/// Count length-`n` blocks. Unknown blocks count toward `upper` only.
pub fn admissible_word_count<T: Real>(
    params: &Params<T>,
    n: usize,
    depth: usize,
) -> Result<WordCount> {
    let scanner = WindowScanner::new(params)?;
    if n > MAX_BLOCK_LEN {
        return Err(LoziError::BudgetExceeded(format!(
            "block length {n} exceeds {MAX_BLOCK_LEN}"
        )));
    }
    let (lower, upper) = (0..1u64 << n)
        .into_par_iter()
        .fold(
            || (scanner.clone(), Vec::new(), 0u64, 0u64),
            |(mut sc, mut buf, mut lo, mut up), bits| {
                let block = Word::from_bits(bits, 0, n).head;
                sc.scan_into(&block, depth, &mut buf);
                if buf.iter().all(|w| w.hi >= T::zero()) {
                    up += 1;
                    if buf.iter().all(|w| w.lo >= T::zero()) {
                        lo += 1;
                    }
                }
                (sc, buf, lo, up)
            },
        )
        .map(|(_, _, lo, up)| (lo, up))
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(WordCount { n, lower, upper })
}

/// `h_upper = min_n log(upper_n)/n`, `h_lower = log(lower_{n_max})/n_max`.
pub fn entropy_estimate<T: Real>(
    params: &Params<T>,
    n_max: usize,
    depth: usize,
) -> Result<EntropyBracket> {
    assert!(n_max >= 1);
    let counts = (1..=n_max)
        .map(|n| admissible_word_count(params, n, depth))
        .collect::<Result<Vec<_>>>()?;
    let h_upper = counts
        .iter()
        .map(|c| (c.upper.max(1) as f64).ln() / c.n as f64)
        .fold(f64::INFINITY, f64::min);
    let last = counts.last().expect("n_max >= 1");
    let h_lower = if last.lower == 0 {
        0.0
    } else {
        (last.lower as f64).ln() / n_max as f64
    };
    Ok(EntropyBracket {
        h_lower,
        h_upper,
        counts,
    })
}
