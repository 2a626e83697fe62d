//! Finite symbol words over {-1, +1}, the head/tail orders, the shift, and
//! a dyadic embedding of each order into [0, 1] used for raster axes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{LoziError, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(i8)]
pub enum Symbol {
    Minus = -1,
    Plus = 1,
}

impl Symbol {
    pub fn from_sign(positive: bool) -> Self {
        if positive {
            Symbol::Plus
        } else {
            Symbol::Minus
        }
    }

    pub fn sign(self) -> i8 {
        self as i8
    }

    pub fn is_plus(self) -> bool {
        self == Symbol::Plus
    }

    pub fn flip(self) -> Self {
        match self {
            Symbol::Minus => Symbol::Plus,
            Symbol::Plus => Symbol::Minus,
        }
    }

    pub fn value<T: Scalar>(self) -> T {
        match self {
            Symbol::Plus => T::one(),
            Symbol::Minus => -T::one(),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Symbol::Plus => '+',
            Symbol::Minus => '-',
        }
    }
}

/// Sign of `b`, which selects the tail order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BSign {
    Positive,
    Negative,
}

impl BSign {
    /// `b = 0` uses the positive-b order.
    pub fn of(b: f64) -> Self {
        if b < 0.0 {
            BSign::Negative
        } else {
            BSign::Positive
        }
    }

    /// The symbol whose occurrences flip the tail order.
    fn parity_symbol(self) -> Symbol {
        match self {
            BSign::Positive => Symbol::Minus,
            BSign::Negative => Symbol::Plus,
        }
    }
}

/// Two-sided finite word `ε_{-m} … ε_{-1} · ε_0 … ε_{n-1}`.
///
/// `tail` is stored left to right, so `tail.last()` is `ε_{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub tail: Vec<Symbol>,
    pub head: Vec<Symbol>,
}

impl Word {
    pub fn new(tail: Vec<Symbol>, head: Vec<Symbol>) -> Self {
        Self { tail, head }
    }

    pub fn tail_len(&self) -> usize {
        self.tail.len()
    }

    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    pub fn len(&self) -> usize {
        self.tail.len() + self.head.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `ε_i` for `-m <= i < n`.
    pub fn get(&self, i: isize) -> Option<Symbol> {
        if i >= 0 {
            self.head.get(i as usize).copied()
        } else {
            let k = self.tail.len() as isize + i;
            (k >= 0).then(|| self.tail[k as usize])
        }
    }

    /// All symbols left to right, with the dot position.
    pub fn symbols(&self) -> (Vec<Symbol>, usize) {
        let mut all = self.tail.clone();
        all.extend_from_slice(&self.head);
        (all, self.tail.len())
    }

    /// Rebuild from a flat symbol string and a dot position.
    pub fn from_symbols(all: &[Symbol], dot: usize) -> Self {
        Self {
            tail: all[..dot].to_vec(),
            head: all[dot..].to_vec(),
        }
    }

    /// Word whose symbol `k` (left to right) is `+1` iff bit `k` of `bits` is set.
    pub fn from_bits(bits: u64, tail_len: usize, head_len: usize) -> Self {
        let sym = |k: usize| Symbol::from_sign(bits >> k & 1 == 1);
        Self {
            tail: (0..tail_len).map(sym).collect(),
            head: (tail_len..tail_len + head_len).map(sym).collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.tail {
            write!(f, "{}", s.to_char())?;
        }
        f.write_str(".")?;
        for s in &self.head {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = LoziError;

    /// Accepts `+`/`-` symbols around a single `.` or `·` dot.
    fn from_str(s: &str) -> Result<Self> {
        let mut tail = Vec::new();
        let mut head = Vec::new();
        let mut seen_dot = false;
        for c in s.trim().chars() {
            let sym = match c {
                '+' => Symbol::Plus,
                '-' => Symbol::Minus,
                '.' | '·' if !seen_dot => {
                    seen_dot = true;
                    continue;
                }
                other => return Err(LoziError::Parse(format!("unexpected {other:?} in word"))),
            };
            if seen_dot {
                head.push(sym);
            } else {
                tail.push(sym);
            }
        }
        if !seen_dot {
            return Err(LoziError::Parse("word has no dot".into()));
        }
        Ok(Word { tail, head })
    }
}

/// Compare two heads under `<_s`.
pub fn compare_heads(u: &[Symbol], v: &[Symbol]) -> Result<Ordering> {
    let mut odd = false;
    for (&x, &y) in u.iter().zip(v) {
        if x != y {
            let base = x.cmp(&y);
            return Ok(if odd { base.reverse() } else { base });
        }
        odd ^= x.is_plus();
    }
    if u.len() == v.len() {
        Ok(Ordering::Equal)
    } else {
        Err(LoziError::Incomparable)
    }
}

/// Compare two tails (stored left to right, `ε_{-1}` last) under `<_u`.
pub fn compare_tails(u: &[Symbol], v: &[Symbol], sign: BSign) -> Result<Ordering> {
    let flip = sign.parity_symbol();
    let mut odd = false;
    for (&x, &y) in u.iter().rev().zip(v.iter().rev()) {
        if x != y {
            let base = x.cmp(&y);
            return Ok(if odd { base.reverse() } else { base });
        }
        odd ^= x == flip;
    }
    if u.len() == v.len() {
        Ok(Ordering::Equal)
    } else {
        Err(LoziError::Incomparable)
    }
}

/// Position of a head among all heads of its length, in `<_s` order.
pub fn head_index(h: &[Symbol]) -> u64 {
    debug_assert!(h.len() < 64);
    let mut odd = false;
    let mut idx = 0u64;
    for &s in h {
        let bit = s.is_plus() ^ odd;
        idx = idx << 1 | bit as u64;
        odd ^= s.is_plus();
    }
    idx
}

/// Position of a tail among all tails of its length, in `<_u` order.
pub fn tail_index(t: &[Symbol], sign: BSign) -> u64 {
    debug_assert!(t.len() < 64);
    let flip = sign.parity_symbol();
    let mut odd = false;
    let mut idx = 0u64;
    for &s in t.iter().rev() {
        let bit = s.is_plus() ^ odd;
        idx = idx << 1 | bit as u64;
        odd ^= s == flip;
    }
    idx
}

/// Inverse of [`head_index`].
pub fn head_from_index(idx: u64, len: usize) -> Vec<Symbol> {
    let mut odd = false;
    (0..len)
        .map(|k| {
            let bit = idx >> (len - 1 - k) & 1 == 1;
            let s = Symbol::from_sign(bit ^ odd);
            odd ^= s.is_plus();
            s
        })
        .collect()
}

/// Inverse of [`tail_index`].
pub fn tail_from_index(idx: u64, len: usize, sign: BSign) -> Vec<Symbol> {
    let flip = sign.parity_symbol();
    let mut odd = false;
    let mut rev: Vec<Symbol> = (0..len)
        .map(|k| {
            let bit = idx >> (len - 1 - k) & 1 == 1;
            let s = Symbol::from_sign(bit ^ odd);
            odd ^= s == flip;
            s
        })
        .collect();
    rev.reverse();
    rev
}

/// Coordinate in [0, 1] on the `C^s` axis; gaps are collapsed dyadically.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct CylinderCoord(pub f64);

pub fn head_coordinate(h: &[Symbol]) -> CylinderCoord {
    CylinderCoord(head_index(h) as f64 / (1u64 << h.len()) as f64)
}

pub fn tail_coordinate(t: &[Symbol], sign: BSign) -> CylinderCoord {
    CylinderCoord(tail_index(t, sign) as f64 / (1u64 << t.len()) as f64)
}

/// Move the dot one place right: `ε_0` joins the tail.
pub fn shift(w: &Word) -> Result<Word> {
    let (&first, rest) = w.head.split_first().ok_or(LoziError::EmptyHead)?;
    let mut tail = w.tail.clone();
    tail.push(first);
    Ok(Word {
        tail,
        head: rest.to_vec(),
    })
}

/// All `2^(m+n)` words with tail length `m` and head length `n`.
pub fn enumerate_words(m: usize, n: usize) -> impl Iterator<Item = Word> {
    assert!(m + n < 64, "word too long to enumerate");
    (0..1u64 << (m + n)).map(move |bits| Word::from_bits(bits, m, n))
}
