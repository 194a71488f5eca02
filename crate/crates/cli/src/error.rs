use std::fmt;
use std::path::Path;

/// Process exit code for configuration and input errors.
pub const EXIT_USER: i32 = 2;
/// Process exit code for internal failures.
pub const EXIT_INTERNAL: i32 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values, malformed config files, invalid hyperparameters.
    Config(String),
    /// Missing or malformed user-supplied data files.
    Input(String),
    /// Failures the user cannot fix by editing inputs.
    Internal(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Input(_) => EXIT_USER,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// Wraps a read failure with the path that caused it.
    pub fn read(path: &Path, err: std::io::Error) -> Self {
        CliError::Input(format!("cannot read {}: {err}", path.display()))
    }

    /// Write failures under the run directory are not the user's fault.
    pub fn write(path: &Path, err: std::io::Error) -> Self {
        CliError::Internal(format!("cannot write {}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

// Everything the core crate reports is triggered by user-controlled data
// or hyperparameters, so it maps to the user exit code.
impl From<emoscope_core::Error> for CliError {
    fn from(err: emoscope_core::Error) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Input(format!("malformed json: {err}"))
    }
}
