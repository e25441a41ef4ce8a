use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures reported by the library.
///
/// `Certification` marks a postcondition that a correct implementation can
/// never violate; every other variant is a domain or input error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable-count mismatch: {left} vs {right}")]
    VarCount { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unit_normalize of zero")]
    ZeroNormalize,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("invariant violated: {name}: {detail}")]
    Invariant { name: &'static str, detail: String },
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("not a homology cobordism: {0}")]
    NotHomologyCobordism(String),
    #[error("not a transversal: {0}")]
    NotTransversal(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("certification failure: {name}: {detail}")]
    Certification { name: &'static str, detail: String },
}

impl Error {
    pub fn invariant(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant { name, detail: detail.into() }
    }

    pub fn certification(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Certification { name, detail: detail.into() }
    }

    /// Reclassifies a violated invariant as an internal failure.
    pub fn into_certification(self) -> Self {
        match self {
            Error::Invariant { name, detail } => Error::Certification { name, detail },
            other => other,
        }
    }

    pub fn is_certification(&self) -> bool {
        matches!(self, Error::Certification { .. })
    }
}
