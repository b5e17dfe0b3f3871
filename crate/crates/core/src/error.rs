use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("part size d = {0} is not supported (need d >= 2)")]
    PartSize(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inexact division: {dividend} / {divisor} ({context})")]
    InexactDivision {
        dividend: String,
        divisor: String,
        context: String,
    },

    #[error("negative count {value} at {context}")]
    NegativeCount { value: String, context: String },

    #[error("negative insertion coefficient {value} at k~={loops}, j={step} ({context})")]
    NegativeCoefficient {
        value: i64,
        loops: usize,
        step: usize,
        context: String,
    },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("oracle refused: {points} points exceeds the bound of {bound} ({what})")]
    OracleBound {
        what: &'static str,
        points: usize,
        bound: usize,
    },

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
