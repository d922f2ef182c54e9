use thiserror::Error;

/// Errors raised across the library.
///
/// The CLI maps `Usage`, `Parse`, `Lookup` and `Load` to exit status 2 and the
/// mathematical failures (`Precondition`, `Degenerate`, `Certificate`,
/// `UnsupportedMetric`) to exit status 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown algebra `{name}`; valid names: {valid}")]
    Lookup { name: String, valid: String },

    #[error("load error: {0}")]
    Load(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate 2-form: {0}")]
    Degenerate(String),

    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error("unsupported metric: {0}")]
    UnsupportedMetric(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Process exit status for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse(_) | Error::Lookup { .. } | Error::Load(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
