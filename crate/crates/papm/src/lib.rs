//! File formats, reports and the command-line front end for `papm-core`.

pub mod commands;
pub mod dot;
pub mod format;
pub mod report;

use papm_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("budget refusal: {0}")]
    Budget(Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 1 for IO and internal errors, 2 for malformed input, 3 for a budget
    /// refusal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Internal(_) => 1,
            CliError::Malformed(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e),
            Error::NotPrime(_)
            | Error::CharacteristicTooLarge(_)
            | Error::ZeroTruncation
            | Error::TruncationTooSmall { .. }
            | Error::UnreducedEntry { .. }
            | Error::InvalidDescriptor(_)
            | Error::InfiniteWithoutTruncation
            | Error::InvalidIdentification(_)
            | Error::BlockCycle
            | Error::InvalidModule(_)
            | Error::DimensionMismatch(_)
            | Error::NotTruncatable { .. }
            | Error::Unsupported(_)
            | Error::WrongMode(_) => CliError::Malformed(e.to_string()),
            Error::RingMismatch | Error::NotAnIdeal(_) | Error::NotInvariant | Error::NotProper => {
                CliError::Internal(e.to_string())
            }
        }
    }
}
