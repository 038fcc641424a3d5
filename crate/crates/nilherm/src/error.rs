//! Crate-wide error type.

use thiserror::Error;

use crate::rational::Rational;

/// Errors reported by the library.
///
/// The CLI maps `Parse`/`Json` to exit code 2 and everything else to exit
/// code 3; verification falsity is a value, not an error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("JSON error: {0}")]
    Json(String),

    #[error(
        "Jacobi identity fails at basis triple ({i}, {j}, {k}); residual ({})",
        format_coeffs(residual)
    )]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vec<Rational>,
    },

    #[error("Lie algebra is not nilpotent: ascending central series stabilizes at dimension {stabilized_dim} < {dim}")]
    NotNilpotent { stabilized_dim: usize, dim: usize },

    #[error("matrix is not a complex structure: J^2 != -I")]
    NotComplexStructure,

    #[error("Gram matrix is not symmetric positive definite")]
    NotPositiveDefinite,

    #[error("metric is not Hermitian: J^t g J != g")]
    NotHermitian,

    #[error("representation is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("no invariant complex structure: {0}")]
    NoInvariantComplexStructure(String),

    #[error("no invariant quaternionic triple: {0}")]
    NoInvariantTriple(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn format_coeffs(v: &[Rational]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
