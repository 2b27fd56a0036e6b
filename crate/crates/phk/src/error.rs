//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the computational layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhkError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not expressible in tau: {0}")]
    NotTauExpressible(String),

    #[error("Baxterised operator undefined at u=0")]
    ZeroBaxterArgument,

    #[error("operator index {index} out of range 1..{max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },

    #[error("not a Yamanouchi word: {0}")]
    NotYamanouchi(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("partition {partition} does not fit in the staircase of n={n}")]
    NotInStaircase { partition: String, n: usize },

    #[error("zero Baxter argument at box ({row},{col}) of {shape}")]
    ZeroLabel { row: usize, col: usize, shape: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("truncation cap exhausted at {0}")]
    CapExhausted(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, PhkError>;
