use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed graph or certificate text, or an edge list that violates
    /// the simple-graph rules.
    #[error("format error (line {line}): {msg}")]
    Format { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// An exact oracle was asked to work above its configured size cap.
    #[error("capacity exceeded: {what} is {size}, cap is {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("non-adaptive plan is sealed; no further pairs can be committed")]
    PlanSealed,

    #[error("non-adaptive plan is not sealed; answers are unavailable")]
    PlanNotSealed,

    #[error("pair ({0}, {1}) was never committed to the plan")]
    Uncommitted(usize, usize),

    /// A tester produced rejection evidence that does not hold on the true graph.
    #[error("unsound rejection evidence: {0}")]
    UnsoundEvidence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
