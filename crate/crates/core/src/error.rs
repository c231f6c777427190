use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Stereographic inverse evaluated at the pole.
    #[error("singularity: {0}")]
    Singularity(String),
    /// A lifted function blows up at the pole.
    #[error("lift is unbounded: {0}")]
    LiftUnbounded(String),
    /// A quadrature or expansion failed to converge to the requested accuracy.
    #[error("accuracy: {what} (estimate {estimate:.3e})")]
    Accuracy { what: String, estimate: f64 },
    /// Coefficient tail too heavy for the requested norm.
    #[error("regularity: {0}")]
    Regularity(String),
    /// A function required to be positive is not.
    #[error("positivity: {0}")]
    Positivity(String),
    /// Structural precondition (orthogonality, normalization, ...) violated.
    #[error("precondition: {0}")]
    Precondition(String),
    /// Parameter sweep outside the regime where the asymptotics apply.
    #[error("range: {0}")]
    Range(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    /// Time step collapsed while integrating the flow.
    #[error("stiffness: {0}")]
    Stiffness(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
