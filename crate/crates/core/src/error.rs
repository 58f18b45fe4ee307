use crate::weight::Dims;

/// Errors raised by the library.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: Dims, right: Dims },

    #[error("invalid root system spec: {0}")]
    Spec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search guard exceeded: {what} is {actual}, bound is {bound} (override with --max-positive)")]
    Guard {
        what: &'static str,
        actual: usize,
        bound: usize,
    },

    #[error("weight is atypical: (lambda+rho, {root}) = 0")]
    Atypical { root: String },

    #[error("weight {weight} is not dominant integral: <lambda, {root}> = {value}")]
    NotDominant {
        weight: String,
        root: String,
        value: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
