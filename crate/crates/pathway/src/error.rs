use thiserror::Error;

/// Error type shared by every numerical routine in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Arguments outside the domain of the operation (nonpositive scale,
    /// nonexistent moment, divergent integral detected up front, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested accuracy could not be certified (series or quadrature
    /// failed to converge, contour truncation bound not reached, ...).
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// An H-/G-function specification is structurally invalid, e.g. no
    /// contour abscissa separates the two pole sequences.
    #[error("spec error: {0}")]
    Spec(String),
    /// Moment-matching estimation found no admissible root.
    #[error("fit error: {0}")]
    Fit(String),
    /// Malformed input handed to the CLI (bad grid syntax, bad matrix file).
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn accuracy(msg: impl Into<String>) -> Self {
        Error::Accuracy(msg.into())
    }
    pub fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }
    pub fn fit(msg: impl Into<String>) -> Self {
        Error::Fit(msg.into())
    }
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Domain(_) | Error::Fit(_) | Error::Spec(_) => 3,
            Error::Accuracy(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
