use thiserror::Error;

use crate::tropical::VarIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {0}: type D_n needs n >= 2")]
    InvalidRank(usize),

    #[error("index {index} out of range [1, {max}]")]
    InvalidIndex { index: usize, max: usize },

    #[error("a Laurent polynomial needs at least one term")]
    EmptyPolynomial,

    #[error("Laurent polynomial coefficients must be positive")]
    NonPositiveCoefficient,

    #[error("variable {0} lies outside [1,n]x[1,n-1]; boundary monomial was not excluded")]
    OutOfRange(VarIndex),

    #[error("length mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("negative weight coefficient {0}; a dominant weight needs lambda_i >= 0")]
    NotDominant(i64),

    #[error("invalid admissible pattern {0:?}")]
    InvalidPattern(Vec<usize>),

    #[error("row {row} of triangle has no single-gap shape")]
    MalformedRow { row: usize },

    #[error("node budget of {budget} exceeded after {explored} nodes")]
    BudgetExceeded { budget: usize, explored: usize },

    #[error("Weyl dimension product is not an integer: {0}")]
    NonIntegralDimension(String),

    #[error("parse error: {0}")]
    Parse(String),
}
