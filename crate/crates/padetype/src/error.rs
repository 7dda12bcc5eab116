use std::path::PathBuf;

use padetype_core::Error as CoreError;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Budget(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) | Self::Read { .. } => 2,
            Self::Numerical(_) => 3,
            Self::Budget(_) => 4,
            Self::Write { .. } => 1,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Self::Validation(msg.into())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::IterationBudgetExceeded { .. } => Self::Budget(msg),
            CoreError::SingularAtOrigin
            | CoreError::DegenerateDenominator
            | CoreError::NumericalFailure
            | CoreError::NonDecaying(_)
            | CoreError::NoPoleDetected => Self::Numerical(msg),
            CoreError::ZeroShift
            | CoreError::NodeAtOrigin
            | CoreError::DuplicateNodes(..)
            | CoreError::EmptyData
            | CoreError::LengthMismatch { .. }
            | CoreError::SeriesTooShort { .. }
            | CoreError::PrescribedFactorAtNode(_)
            | CoreError::InvalidArgument(_)
            | CoreError::ValueUnavailable(_)
            | CoreError::DegreeViolation { .. }
            | CoreError::DegreeMismatch { .. } => Self::Validation(msg),
        }
    }
}
