//! Shared error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix side length must be at least 1")]
    InvalidSize,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix entries must be finite")]
    NonFiniteEntry,

    #[error("mapping is not a bijection on 1..=n")]
    InvalidPermutation,

    #[error("matrix parse error at line {line}: {reason}")]
    MatrixParse { line: usize, reason: String },

    #[error("n = {n} exceeds the brute-force limit {limit}")]
    SizeExceeded { n: usize, limit: usize },

    #[error("{op}: {requirement}")]
    Domain {
        op: &'static str,
        requirement: &'static str,
    },

    #[error("quadrature for {0} did not reach tolerance within budget")]
    QuadratureFailure(String),

    #[error("empty sample")]
    EmptySample,

    #[error("need at least 2 observations, got {count}")]
    InsufficientData { count: usize },

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
}
