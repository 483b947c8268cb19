use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("negative variable index at byte {offset}")]
    NegativeIndex { offset: usize },
    #[error("zero denominator at byte {offset}")]
    ZeroDenominator { offset: usize },
    #[error("index overflow: {0}")]
    IndexOverflow(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
