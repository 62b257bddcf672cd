use std::fmt::Display;
use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input or a violated parameter relation: exit 1.
    #[error("{0}")]
    Validation(String),
    /// A suite ran but did not pass; the report is still printed. Exit 2.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(1),
            CliError::Verification(_) => ExitCode::from(2),
        }
    }
}

/// Library errors are all input problems from the command line's point of view.
pub trait OrValidation<T> {
    fn or_invalid(self) -> Result<T, CliError>;
}

impl<T, E: Display> OrValidation<T> for Result<T, E> {
    fn or_invalid(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Validation(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::validation("x").exit_code(), ExitCode::from(1));
        assert_eq!(CliError::Verification(String::new()).exit_code(), ExitCode::from(2));
    }
}
