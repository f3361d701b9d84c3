use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not {kind} within tolerance (residual {residual:e})")]
    Structure { kind: &'static str, residual: f64 },

    #[error("top block is ill-conditioned (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("{what} overflowed to a non-finite value")]
    NonFinite { what: &'static str },

    #[error("eigenvalue iteration did not converge (sample seed {seed:?})")]
    NotConverged { seed: Option<u64> },

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("worker failed on sample {index} (seed {seed}): {source}")]
    Worker {
        index: u64,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of a numerical routine as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Structure { .. } | Error::IllConditioned { .. } | Error::NonFinite { .. } | Error::NotConverged { .. }
        ) || matches!(self, Error::Worker { source, .. } if source.is_numeric())
    }
}
