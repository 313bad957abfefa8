use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("evaluation assignment does not cover variable {0}")]
    MissingVariable(String),
    #[error("d must be a square-free integer > 1, got {0}")]
    InvalidD(String),
    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),
    #[error("ideal does not define an integral form: {0}")]
    InvalidIdeal(String),
    #[error("discriminant must be positive and non-square, got {0}")]
    InvalidDiscriminant(String),
    #[error("discriminant mismatch: form has {form}, expected {expected}")]
    DiscriminantMismatch { form: String, expected: String },
    #[error("trace^2 - 4 = {0} is not z^2 * {1} for any integer z")]
    NoIntegralZ(String, String),
    #[error("matrix is not hyperbolic (|trace| <= 2)")]
    NotHyperbolic,
    #[error("could not normalize matrix to a positive word within bound {0}")]
    NormalizationBound(usize),
    #[error("matrix is not an automorphism candidate (scalar)")]
    ScalarMatrix,
    #[error("k = {0} exceeds the configured cap {1}")]
    KCapExceeded(usize, usize),
    #[error("invalid çark tuple: {0}")]
    InvalidTuple(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
