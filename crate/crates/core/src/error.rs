use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("duplicate point id {0}")]
    DuplicateId(usize),

    #[error("duplicate point coordinates ({x}, {y})")]
    DuplicatePoint { x: f64, y: f64 },

    #[error("non-finite coordinate for point {0}")]
    NonFinite(usize),

    #[error("point {0} is not on current layer")]
    NotOnCurrentLayer(usize),

    #[error("unknown point id {0}")]
    UnknownId(usize),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("cycles overlap on id {0}")]
    OverlappingCycles(usize),

    #[error("empty cycle")]
    EmptyCycle,

    #[error("layers do not match instance: {0}")]
    LayerMismatch(String),

    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("brute force capped at {cap} cities (got {n})")]
    BruteForceCap { cap: usize, n: usize },

    #[error("held-karp capped at {cap} cities (got {n})")]
    HeldKarpCap { cap: usize, n: usize },

    #[error("no exact oracle at this size (n = {0})")]
    NoExactOracle(usize),

    #[error("instance must contain at least one point")]
    EmptyInstance,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported metric {0}")]
    UnsupportedMetric(String),

    #[error("invalid pipeline `{0}`")]
    InvalidPipeline(String),
}

impl Error {
    /// Whether the error comes from a solver size cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::BruteForceCap { .. } | Error::HeldKarpCap { .. } | Error::NoExactOracle(_)
        )
    }
}
