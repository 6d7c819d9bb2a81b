use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("duality error for morphism `{morphism}`: {message}")]
    Duality { morphism: String, message: String },
    #[error("structure error: {0}")]
    Structure(String),
    #[error("word of weight {weight} exceeds max arity {max_arity}")]
    ArityExceeded { weight: usize, max_arity: usize },
    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),
    #[error("pairing is not monomial: {0}")]
    NonMonomialPairing(String),
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("functional is not cyclic: {0}")]
    NotCyclic(String),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
