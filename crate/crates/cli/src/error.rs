use std::fmt;
use std::io;
use std::path::PathBuf;

/// Errors surfaced to the terminal, grouped by the exit code they map to.
#[derive(Debug)]
pub enum CliError {
    /// The invocation itself is invalid: bad flag combinations, out-of-range
    /// parameters, malformed environment overrides. Exit code 2.
    Usage(String),
    /// Reading input or writing output failed. Exit code 3.
    Io { path: PathBuf, source: io::Error },
    /// A consistency check ran to completion and the result is out of
    /// tolerance. Exit code 4.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Verification(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Io { path, source } => {
                write!(f, "{}: {source}", path.display())
            }
            CliError::Verification(message) => write!(f, "verification failed: {message}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl From<qhfm_core::Error> for CliError {
    fn from(err: qhfm_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<qhfm_statlab::Error> for CliError {
    fn from(err: qhfm_statlab::Error) -> Self {
        match err {
            qhfm_statlab::Error::Io { path, source } => CliError::Io { path, source },
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Usage(format!("serializing report: {err}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
