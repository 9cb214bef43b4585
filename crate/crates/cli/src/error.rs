use std::fmt;
use std::process::ExitCode;

/// Failure of a subcommand, carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: unreadable or malformed files, unsupported graphs, scale
    /// limits. Exit code 2.
    Input(String),
    /// A cross-check found a mismatch. Exit code 1.
    Verification(String),
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input(message.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Verification(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) => write!(f, "error: {message}"),
            CliError::Verification(message) => write!(f, "FAIL: {message}"),
        }
    }
}

impl From<burnoff_core::Error> for CliError {
    fn from(e: burnoff_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
