use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid job: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] bug_spectra::Error),

    #[error("invalid job file: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

impl CliError {
    /// 2 for anything the caller got wrong, 3 when a solver gave up.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(bug_spectra::Error::Domain(_)) => 2,
            CliError::Core(_) => 3,
            CliError::Validation(_) | CliError::Json(_) | CliError::Io { .. } => 2,
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}
