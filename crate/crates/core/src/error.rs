use thiserror::Error;

#[derive(Debug, Error)]
pub enum LspError {
    #[error("polygon needs at least 3 vertices, got n = {0}")]
    TooFewVertices(usize),
    #[error("symmetry reduction is only defined for even n, got n = {0}")]
    SymmetryRequiresEven(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("vertex pair ({i}, {j}) out of range for n = {n}")]
    PairOutOfRange { i: usize, j: usize, n: usize },
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = LspError> = std::result::Result<T, E>;
