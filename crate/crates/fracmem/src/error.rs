use thiserror::Error;

/// Errors surfaced by the CLI. `Display` starts with the error class.
#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Core(#[from] fracmem_core::Error),
    #[error("ParseError: line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("IoError: {0}")]
    Io(#[from] std::io::Error),
    #[error("UsageError: {0}")]
    Usage(String),
}

impl AppError {
    pub fn usage(msg: impl Into<String>) -> Self {
        AppError::Usage(msg.into())
    }
}
