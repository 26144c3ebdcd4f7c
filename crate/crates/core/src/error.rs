use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Zero base with a negative exponent, singular matrix inversion, division by zero.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("c2 must be nonzero")]
    ZeroC2,

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// `t = c1 - A1` vanished, so the weighted-sum identity has no geometric weight.
    #[error("degenerate ratio: t = c1 - A1 = 0, the identity requires t != 0")]
    DegenerateRatio,

    #[error("offset k={k} is invalid: {reason}; X_k and X_{{k-1}} must both be nonzero")]
    InvalidOffset { k: i64, reason: String },

    #[error("n={n} is below the identity's n_min={n_min}")]
    Range { n: i64, n_min: i64 },

    #[error("{0}")]
    Usage(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unsupported schema_version {0} (expected 1)")]
    Version(i64),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
