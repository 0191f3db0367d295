//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("subspace containment violated: {0}")]
    Containment(String),
    #[error("not a complex: {0}")]
    NotComplex(String),
    #[error("outside the degree window: {0}")]
    Window(String),
    #[error("wrong degree: expected {expected}, found {found}")]
    Degree { expected: i32, found: i32 },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("not a Maurer-Cartan element: {0}")]
    NotMaurerCartan(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree cap exceeded: {0}")]
    CapOverflow(String),
    #[error("no associative envelope available: {0}")]
    NoEnvelope(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Prefixes parse and i/o messages with where they happened.
    pub fn context(self, at: impl std::fmt::Display) -> Self {
        match self {
            Error::Parse(m) => Error::Parse(format!("{at}: {m}")),
            Error::Io(m) => Error::Io(format!("{at}: {m}")),
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
