use rayon::prelude::*;

use super::cylinder::{verdict_from_windows, Verdict, WindowScanner};
use super::Params;
use crate::error::{LoziError, Result};
use crate::scalar::Real;
use crate::symbolic::{head_from_index, tail_from_index, BSign, Symbol};

/// Largest raster (in cells) built without an explicit override.
pub const DEFAULT_CELL_LIMIT: u64 = 1 << 24;

/// Verdicts for every cylinder `tail · head` with `word_len` symbols per side.
///
/// Column `i` is the `i`-th head in `<_s` order, row `j` the `j`-th tail in
/// `<_u` order for the sign of `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<Verdict>,
    pub a: f64,
    pub b: f64,
    pub word_len: usize,
    pub depth: usize,
}

impl Raster {
    pub fn get(&self, row: usize, col: usize) -> Verdict {
        self.cells[row * self.width + col]
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.cells.iter().filter(|&&c| c == v).count()
    }
}

pub fn pruned_region_raster<T: Real>(
    params: &Params<T>,
    word_len: usize,
    depth: usize,
    cell_limit: u64,
) -> Result<Raster> {
    let scanner = WindowScanner::new(params)?;
    let cells_needed = 1u128 << (2 * word_len).min(127);
    if word_len > 31 || cells_needed > cell_limit as u128 {
        return Err(LoziError::BudgetExceeded(format!(
            "raster with {word_len} symbols per side exceeds {cell_limit} cells"
        )));
    }
    let side = 1usize << word_len;
    let sign = BSign::of(params.b.to_f64_lossy());
    let heads: Vec<Vec<Symbol>> = (0..side as u64)
        .map(|i| head_from_index(i, word_len))
        .collect();
    let shift_window = 2 * word_len;
    let mut cells = vec![Verdict::Unknown; side * side];
    cells
        .par_chunks_mut(side)
        .enumerate()
        .for_each_with(scanner, |scanner, (row, out)| {
            let mut all = tail_from_index(row as u64, word_len, sign);
            all.extend(std::iter::repeat_n(Symbol::Plus, word_len));
            let mut buf = Vec::with_capacity(2 * word_len + 1);
            for (col, head) in heads.iter().enumerate() {
                all[word_len..].copy_from_slice(head);
                scanner.scan_into(&all, depth, &mut buf);
                out[col] = verdict_from_windows(&buf, word_len, shift_window);
            }
        });
    let p = params.to_f64();
    Ok(Raster {
        width: side,
        height: side,
        cells,
        a: p.a,
        b: p.b,
        word_len,
        depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(a: f64, b: f64) -> Params<f64> {
        Params::new(a, b)
    }
    use crate::pruning::classify_cylinder;
    use crate::symbolic::Word;

    #[test]
    fn cells_match_direct_classification() {
        let params = pf(1.7, 0.5);
        let r = pruned_region_raster(&params, 4, 32, DEFAULT_CELL_LIMIT).unwrap();
        assert_eq!(r.cells.len(), 256);
        for row in 0..16 {
            for col in 0..16 {
                let w = Word::new(
                    tail_from_index(row as u64, 4, BSign::Positive),
                    head_from_index(col as u64, 4),
                );
                assert_eq!(
                    r.get(row, col),
                    classify_cylinder(&w, 32, 8, &params).unwrap()
                );
            }
        }
    }

    #[test]
    fn negative_b_uses_the_flipped_tail_order() {
        let params = pf(1.9, -0.3);
        let r = pruned_region_raster(&params, 3, 32, DEFAULT_CELL_LIMIT).unwrap();
        for row in 0..8 {
            for col in 0..8 {
                let w = Word::new(
                    tail_from_index(row as u64, 3, BSign::Negative),
                    head_from_index(col as u64, 3),
                );
                assert_eq!(
                    r.get(row, col),
                    classify_cylinder(&w, 32, 6, &params).unwrap()
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let params = pf(2.0, 0.0);
        assert!(matches!(
            pruned_region_raster(&params, 10, 32, 1000),
            Err(LoziError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn two_zero_raster_is_blank() {
        let r = pruned_region_raster(&pf(2.0, 0.0), 6, 32, DEFAULT_CELL_LIMIT).unwrap();
        assert_eq!(r.count(Verdict::CertifiedPruned), 0);
    }

    #[test]
    fn panels_near_two_have_pruned_cells_only_off_the_axis() {
        let r = pruned_region_raster(&pf(2.0, 0.1), 7, 32, DEFAULT_CELL_LIMIT).unwrap();
        let s = pruned_region_raster(&pf(1.95, 0.1), 7, 32, DEFAULT_CELL_LIMIT).unwrap();
        assert!(s.count(Verdict::CertifiedPruned) >= r.count(Verdict::CertifiedPruned));
    }
}
