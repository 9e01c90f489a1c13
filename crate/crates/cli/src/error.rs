use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const NOT_FOUND: i32 = 2;
    pub const GUARD: i32 = 3;
    pub const PARSE: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] secfilter::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use secfilter::Error as E;
        match self {
            CliError::Core(E::ScanTooLarge { .. })
            | CliError::Core(E::EnumerationTooLarge { .. })
            | CliError::Core(E::OracleTooLarge { .. })
            | CliError::Guard(_) => exit::GUARD,
            CliError::Core(E::Parse { .. }) | CliError::Usage(_) => exit::PARSE,
            _ => exit::FAILURE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
