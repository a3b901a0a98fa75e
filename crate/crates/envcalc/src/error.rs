use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0}; only 1 and 2 are allowed")]
    UnsupportedDimension(usize),
    #[error("improper function: {0}")]
    Improper(String),
    #[error("convex hull is unbounded below on the sample")]
    ImproperHull,
    #[error("empty set")]
    EmptySet,
    #[error("samples are not convex")]
    NotConvex,
    #[error("grid is not strictly increasing")]
    Unsorted,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("graph is not monotone")]
    NotMonotone,
    #[error("pair ({a}, {a_star}) is not in the subdifferential graph")]
    NotSubgradient { a: String, a_star: String },
    #[error("invalid normal-cone sample: {0}")]
    InvalidNormal(String),
    #[error("point is not in the set")]
    NotInSet,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("level must be a real number")]
    NonFiniteLevel,
    #[error("negative epsilon")]
    NegativeEpsilon,
    #[error("unsupported tuple length {0}; expected 2, 3 or 4")]
    UnsupportedOrder(usize),
    #[error("exact and floating-point values cannot be mixed")]
    MixedBackends,
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("unknown gallery entry `{0}`")]
    UnknownGallery(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInstance(msg.into())
    }

    pub fn improper(msg: impl Into<String>) -> Self {
        Error::Improper(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors that mean "the input does not meet a hypothesis".
    pub fn is_hypothesis(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::UnknownTheorem(_) | Error::UnknownGallery(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
