use thiserror::Error;

/// Failure modes shared by every layer of the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (wrong constant
    /// term, `p | k`, degree beyond the configured cap, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An exact division that must be integral left a remainder.
    #[error("integrality violated: {0}")]
    Integrality(String),
    /// A matrix does not describe an `F_p C_p`-module.
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    /// A virtual Green-ring element was used where an actual module is needed.
    #[error("negative or non-integral coordinates: {0}")]
    NegativeCoords(String),
    /// A tensor-space computation would exceed the dimension cap.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
