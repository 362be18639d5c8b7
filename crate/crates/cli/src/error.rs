use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BREACH: u8 = 3;
pub const EXIT_IO: u8 = 4;
pub const EXIT_TRUNCATION: u8 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("invalid parameters: {0}")]
    Params(#[from] hcs_core::Error),
    #[error("numerical failure at {context}: {source}")]
    Numeric {
        context: String,
        source: hcs_core::Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Params(_) => EXIT_USAGE,
            CliError::Numeric { source, .. } => match source {
                hcs_core::Error::InadequateTruncation { .. } | hcs_core::Error::LadderExceedsDim { .. } => {
                    EXIT_TRUNCATION
                }
                hcs_core::Error::DegenerateBranches => EXIT_USAGE,
                _ => EXIT_BREACH,
            },
            CliError::Io { .. } => EXIT_IO,
        }
    }
}
