use thiserror::Error;

/// Errors for invalid inputs. Violated internal identities are not errors;
/// they surface as failed verification reports or panics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coefficient {k} requested beyond cutoff {cutoff}")]
    BeyondCutoff { k: i64, cutoff: usize },
    #[error("cutoff mismatch: {0} vs {1}")]
    CutoffMismatch(usize, usize),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("invalid flag data: {0}")]
    InvalidFlags(String),
    #[error("not divisible by {0}")]
    NotDivisible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] crate::ring::ParsePolyError),
}

pub type Result<T> = std::result::Result<T, Error>;
