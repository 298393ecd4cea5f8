use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("rank deficient: expected rank {expected}, got {got}")]
    RankDeficient { expected: usize, got: usize },

    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),

    #[error("subspace is not closed under the bracket: {0}")]
    NotClosed(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate parameter {parameter}: {reason}")]
    DegenerateParameter { parameter: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not integrable, algebraic hull is strictly larger: {witness}")]
    NotIntegrable { witness: String },

    #[error("non-flat intersection: {0}")]
    NonFlatIntersection(String),

    #[error("interpolation failed: {0}")]
    InterpolationFailed(String),

    #[error("ill-posed input: {0}")]
    IllPosed(String),

    #[error("membership error: {0}")]
    Membership(String),
}

impl Error {
    /// True for failures caused by catalog, spectrum or feature limits rather
    /// than by bad input.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_))
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
