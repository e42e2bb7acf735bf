use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported range: {0}")]
    Unsupported(String),
    /// m < n: the relevant rings are polynomial algebras and u(I) does not exist.
    #[error("polynomial algebra regime: {0}")]
    PolynomialRegime(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("variable universe mismatch")]
    UniverseMismatch,
    #[error("THEOREM-VIOLATION: {0}")]
    TheoremViolation(String),
    #[error("INDEPENDENCE-VIOLATION: {0}")]
    IndependenceViolation(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a mathematical check, as opposed to bad input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_) | Error::IndependenceViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
