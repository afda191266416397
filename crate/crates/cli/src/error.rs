use thiserror::Error;

/// Failures that stop a command before it can produce a report. All of them
/// are input problems and map to exit code 1; failed checks are reported in
/// the output instead.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] munorm_core::Error),
    #[error("cannot parse operator spec: {0}")]
    Spec(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
