use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor argument was outside its mathematical domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A Pochhammer denominator `(b)_k` vanished while building a Kummer
    /// polynomial.
    #[error("Pochhammer pole: (b)_k = 0 for b = {b}, k = {k}")]
    PochhammerPole { b: f64, k: u32 },

    /// A coordinate value violated the range constraints of its chart.
    #[error("coordinate out of range: {0}")]
    OutOfRange(String),

    /// A point's chart cannot be used with the given eigenstate family.
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),

    /// Requested ladder degree of freedom does not exist for this family.
    #[error("invalid degree of freedom {dof} for family {family}")]
    InvalidDof { dof: String, family: String },

    /// The symmetric tridiagonal eigensolver failed to converge.
    #[error("eigensolver failed to converge on row {0}")]
    EigenSolve(usize),

    /// A least-squares sample set was too ill-conditioned to trust.
    #[error("ill-conditioned sample set (condition estimate {0:.3e})")]
    IllConditioned(f64),

    /// Failed to parse a serialized state or point description.
    #[error("parse error: {0}")]
    Parse(String),
}
