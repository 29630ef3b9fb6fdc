use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),
    /// A derived-category computation left the configured shift window.
    #[error("window error: {0}")]
    Window(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A claim was checked and found false.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Broken internal invariant; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
