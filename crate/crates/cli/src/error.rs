use std::fmt;

use hurwitz_core::Error;

/// Exit codes: 0 ok, 2 usage, 3 on-wall, 4 failed check or internal error.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    OnWall(String),
    /// A verification or consistency check did not hold. The report has
    /// already been written.
    CheckFailed,
    Internal(String),
}

impl CliError {
    pub fn usage(msg: &str) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::OnWall(_) => 3,
            CliError::CheckFailed | CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::OnWall(m) => write!(f, "{m}"),
            CliError::CheckFailed => write!(f, "check failed"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OnWall(_) | Error::SubInputOnWall(_) => CliError::OnWall(e.to_string()),
            Error::InvalidPartition(_)
            | Error::SizeMismatch { .. }
            | Error::ShapeMismatch { .. }
            | Error::InvalidOrdering(_)
            | Error::InvalidWall(_)
            | Error::NonPositiveDelta(_)
            | Error::NotAdjacent(_)
            | Error::ChamberMismatch(_)
            | Error::NoSample(_)
            | Error::NotTotallyNegative
            | Error::InexactDivision(_)
            | Error::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}
