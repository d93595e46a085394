use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum UniformError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point has a non-finite coordinate at position {0}")]
    NonFiniteCoordinate(usize),

    #[error("pseudometric family must have at least one index")]
    EmptyFamily,

    #[error("unknown pseudometric index `{0}`")]
    UnknownIndex(String),

    #[error("point cloud must be nonempty")]
    EmptyCloud,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("contraction constant for `{index}` is {value}, must lie in [0,1)")]
    BadContractionConstant { index: String, value: f64 },

    #[error("potential `{index}` evaluated to {value}, below its declared lower bound {bound}")]
    PotentialBelowBound {
        index: String,
        value: f64,
        bound: f64,
    },

    #[error("iteration did not close under the multi-function within {0} rounds")]
    NonClosure(usize),

    #[error("inwardness witness infeasible at iterate {iterate:?} (best ratio {ratio}, required {required})")]
    WitnessInfeasible {
        iterate: Vec<f64>,
        ratio: f64,
        required: f64,
    },

    #[error("hypothesis violated for index `{index}`: {detail}")]
    HypothesisViolation { index: String, detail: String },

    #[error("family must be separating for this operation")]
    NotSeparating,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, UniformError>;
