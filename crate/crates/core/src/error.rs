use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set mismatch: {left} points vs {right} points")]
    GroundMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {what} needs {count}, cap is {cap}")]
    Resource { what: String, count: u128, cap: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("rejected at stage `{stage}`: {detail}")]
    Rejected { stage: String, detail: String },

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn rejected(stage: &str, detail: impl Into<String>) -> Self {
        Error::Rejected { stage: stage.to_string(), detail: detail.into() }
    }
}
