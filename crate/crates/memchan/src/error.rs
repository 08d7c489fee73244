use thiserror::Error;

/// Errors produced by covariance construction, entropy evaluation and the
/// numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar parameter is outside its documented range.
    #[error("{name} must be {constraint}, got {value}")]
    ParameterRange {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    /// Argument of the thermal entropy function below the clip tolerance.
    #[error("thermal entropy argument must be non-negative, got {0}")]
    NegativeEntropyArgument(f64),

    /// A symplectic value below the vacuum limit 1/2 (beyond tolerance).
    #[error("symplectic value {0} is below the vacuum limit 1/2")]
    SubVacuumSymplecticValue(f64),

    /// Covariance matrix with a non-positive determinant.
    #[error("covariance matrix is not positive definite (determinant {0})")]
    NotPositiveDefinite(f64),

    /// Covariance matrix with no physical symplectic spectrum.
    #[error("covariance matrix has no physical symplectic spectrum ({what} = {value})")]
    NonPhysical { what: &'static str, value: f64 },

    /// The iterative eigenvalue routine exhausted its sweep budget.
    #[error("eigenvalue iteration failed to converge after {0} sweeps")]
    NoConvergence(usize),

    /// Sweep axis values must be non-empty and strictly increasing.
    #[error("sweep axis must be non-empty and strictly increasing")]
    InvalidAxis,

    /// Writing a serialized sweep failed.
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
