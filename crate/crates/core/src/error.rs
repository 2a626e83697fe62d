use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoziError {
    #[error("parameters (a={a}, b={b}) are outside the hyperbolic region a > 1 + |b|")]
    NotHyperbolic { a: f64, b: f64 },
    #[error("word too short: need {needed} symbols on the {side} side, have {have}")]
    InsufficientWord {
        side: &'static str,
        needed: usize,
        have: usize,
    },
    #[error("cannot shift a word with an empty head")]
    EmptyHead,
    #[error("words agree on their common prefix but differ in length")]
    Incomparable,
    #[error("closed form only applies to the head (+1,-1,-1,...)")]
    WrongHead,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no fixed point for (a={a}, b={b})")]
    NoFixedPoint { a: f64, b: f64 },
    #[error("the map is not invertible at b = 0")]
    NonInvertible,
    #[error("a-derivative lower bound {lo_a} is not positive at a={a}")]
    DegenerateBounds { a: f64, lo_a: f64 },
    #[error("polygon is not invariant: witness ({x}, {y}) lies outside")]
    NotInvariant { x: f64, y: f64 },
    #[error("wrong parameters: {0}")]
    WrongParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LoziError>;
