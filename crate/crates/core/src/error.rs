use std::path::PathBuf;

/// Errors raised by the group engine, the constructors and the searches.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("order mismatch: declared {declared}, computed {computed}")]
    OrderMismatch { declared: u64, computed: u64 },

    #[error("refusing {what}: {actual} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        actual: u64,
    },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not integral: {0}")]
    NonIntegral(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that indicate a corrupt or inconsistent data file.
    pub fn is_data_integrity(&self) -> bool {
        matches!(self, Error::OrderMismatch { .. } | Error::Parse { .. } | Error::Integrity(_))
    }
}
