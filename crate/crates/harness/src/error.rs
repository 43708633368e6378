use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("no admissible instance for cell {cell} after {attempts} attempts")]
    GenerationExhausted { cell: String, attempts: usize },
    #[error(transparent)]
    Core(#[from] duality_core::Error),
    #[error("invalid instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}
