use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} inputs, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("input {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("lookup weight on input {axis} has no entry for pattern {pattern:#b}")]
    LookupMiss { axis: usize, pattern: u64 },

    #[error("lookup weight needs a binary input vector, input {index} is {value}")]
    NotBinary { index: usize, value: f64 },

    #[error("weight is singular at x = 0 (only the product x*w is defined there)")]
    SingularWeight,

    #[error("invalid width {0}: widths must be finite and strictly positive")]
    InvalidWidth(f64),

    #[error("invalid center {0}: centers must be finite")]
    InvalidCenter(f64),

    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),

    #[error("empty input")]
    Empty,

    #[error("value {0} is not a bit (0 or 1)")]
    NonBinaryValue(u8),

    #[error("invalid truth table: {0}")]
    InvalidTable(String),

    #[error("arity {n} outside supported range {min}..={max}")]
    UnsupportedArity { n: usize, min: usize, max: usize },

    #[error("invalid wiring: {0}")]
    Wiring(String),

    #[error("invalid expression: {0}")]
    InvalidExpr(String),
}
