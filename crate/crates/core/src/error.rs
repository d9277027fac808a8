use thiserror::Error;

/// Errors raised by constructors, parsers and data ingestion.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("parametric fit undefined: {0}")]
    FitUndefined(String),

    #[error("family not increasing: rho({lo_level}) = {lo_value} > rho({hi_level}) = {hi_value}")]
    FamilyNotIncreasing {
        lo_level: f64,
        lo_value: f64,
        hi_level: f64,
        hi_value: f64,
    },

    #[error("benchmark undefined: no strictly positive weighted expected return")]
    BenchmarkUndefined,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown metric key `{key}`: {reason}")]
    MetricKey { key: String, reason: String },

    #[error("{path}: {message}")]
    Ingest { path: String, message: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
