use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero form")]
    ZeroForm,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree out of range: {0}")]
    Degree(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not in M_f")]
    NotInMf,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no nilpotent available")]
    NoNilpotent,
    #[error("d < 3 for degenerate mode")]
    DegreeTooLow,
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
