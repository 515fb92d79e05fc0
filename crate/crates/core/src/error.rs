use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("padding undefined: V({lambda})_{n} needs n >= |lambda| + lambda_1 = {needed}")]
    PaddingUndefined { lambda: String, n: usize, needed: usize },

    #[error("rank {n} exceeds the configured maximum {max}")]
    RankTooLarge { n: usize, max: usize },

    #[error("shape mismatch: partition of {lambda} vs cycle type of {mu}")]
    ShapeMismatch { lambda: usize, mu: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("cache file {path} is corrupt: {reason}")]
    CacheCorrupt { path: String, reason: String },

    #[error("not a genuine character: multiplicity of {lambda} is {value}")]
    NotACharacter { lambda: String, value: String },

    #[error("table has no levels")]
    EmptyTable,

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("table too shallow: {0}")]
    TableTooShallow(String),

    #[error("table `{0}` is not marked FI#")]
    NotFISharp(String),

    #[error("inconsistent FI# table at level {level}: {reason}")]
    InconsistentTable { level: usize, reason: String },

    #[error("expression is not weight-homogeneous (weights {0} and {1})")]
    NonHomogeneous(usize, usize),

    #[error("scale exceeded: {0}")]
    ScaleExceeded(String),

    #[error("vector is not in the ambient span: {0}")]
    NotInSpan(String),

    #[error("invalid consistent sequence: {0}")]
    InvalidSequence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invariant violation at {path}: {reason}")]
    InvariantViolation { path: String, reason: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
