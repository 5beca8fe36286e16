use std::path::PathBuf;

use filtrum::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("cannot parse {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Kind(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IoError",
            CliError::Parse { .. } => "ParseError",
            CliError::Kind(_) => "WrongDocumentKind",
            CliError::Usage(_) => "UsageError",
            CliError::Core(e) => e.code(),
        }
    }

    /// 1 for invalid input, 2 for a violated law, 3 for an exceeded cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap() => 3,
            CliError::Core(CoreError::Violation { .. }) => 2,
            _ => 1,
        }
    }
}
