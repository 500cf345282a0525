use thiserror::Error;

/// Errors raised by the loiter library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LoiterError {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structurally invalid argument (empty list, too few samples, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A path handed to an operation that requires a closed path does not close.
    #[error("path does not close: position gap {position_gap} m, heading gap {heading_gap} rad")]
    OpenPath { position_gap: f64, heading_gap: f64 },

    /// Malformed raster input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A numerical routine that must succeed did not (bracket lost, no sign change).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LoiterError {
    fn from(e: std::io::Error) -> Self {
        LoiterError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LoiterError>;
