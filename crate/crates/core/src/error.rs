use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime not exceeding 2^31-1")]
    NotPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}, column {column}: {message}")]
    Input {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("exponent vectors have lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {count} generators")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("the unit ideal (generator 1) has no LCM-lattice to resolve over")]
    UnitIdeal,

    #[error("{generators} generators exceed the cap of {cap} (the construction enumerates 2^{generators} subsets)")]
    CapExceeded { generators: usize, cap: usize },

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid poset map: {0}")]
    InvalidPosetMap(String),

    #[error("malformed complex: {0}")]
    Structural(String),

    #[error("internal invariant failure: {0}")]
    Internal(String),
}
