use thiserror::Error;

/// Errors raised across the analysis pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("edge `{edge}` references undeclared vertex `{vertex}`")]
    UnknownEndpoint { edge: String, vertex: String },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("graph `{0}` contains a directed cycle")]
    NotAcyclic(String),

    #[error("vertex `{0}` is not a sink")]
    NotASink(String),

    #[error("modulus k = {0} is not allowed (k must be at least 2)")]
    BadModulus(usize),

    #[error("path count overflowed 64 bits at sink `{0}`")]
    PathCountOverflow(String),

    #[error("graph has {0} sinks; a single-sink component is required")]
    MultipleSinks(usize),

    #[error("vertex `{0}` has more than one outgoing edge; graph is not a maximal out-split component")]
    NotOutSplit(String),

    #[error("quot is infinite (no path of length {length} to sink {sink})")]
    InfiniteQuot { sink: String, length: usize },

    #[error("residue counts at sink `{sink}` are not all equal: {counts:?}")]
    UnequalCounts { sink: String, counts: Vec<u64> },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_modulus(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::BadModulus(k))
    } else {
        Ok(())
    }
}
