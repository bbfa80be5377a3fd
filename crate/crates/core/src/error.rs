use thiserror::Error;

use crate::symbolic::{EvalError, ParseError, SampleError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension {dim} exceeds the brute-force limit {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("degenerate ansatz: {0}")]
    DegenerateAnsatz(String),
    #[error("profile not fully verified: {0}")]
    UnverifiedProfile(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("line {line}: {message}")]
    Problem { line: usize, message: String },
    #[error("missing required key: {0}")]
    MissingKey(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
