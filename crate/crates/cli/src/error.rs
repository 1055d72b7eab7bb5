use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("{0}")]
    Budget(mlcss_core::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    /// `check` found a disagreement between solver and oracle.
    #[error("solver and oracle disagree")]
    Disagreement,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) | CliError::Disagreement => 1,
        }
    }
}

impl From<mlcss_core::Error> for CliError {
    fn from(e: mlcss_core::Error) -> Self {
        match e {
            mlcss_core::Error::BudgetExceeded { .. } => CliError::Budget(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<&CliError> for ExitCode {
    fn from(e: &CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}
