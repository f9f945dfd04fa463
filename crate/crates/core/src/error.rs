use thiserror::Error;

use crate::complex::Side;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid complex `{name}`: {reason}")]
    InvalidComplex { name: String, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown builtin manifold `{0}` (expected s3, s1xs2, rp3 or lens)")]
    UnknownBuiltin(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration of {required} terms exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("vector is not a {side} cycle: {reason}")]
    NotACycle { side: Side, reason: String },

    #[error("cycle has a nonzero free homology class {free:?}; no multiple of it bounds")]
    FreePart { free: Vec<String> },

    #[error("expected a {expected} cycle, got a {found} cycle")]
    SideMismatch { expected: Side, found: Side },

    #[error("covariant gauge fixing needs exactly two 3-cells, complex has {0}")]
    NotHeegaard(usize),

    #[error("1-skeleton is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(usize),
}
