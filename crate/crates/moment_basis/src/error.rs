use thiserror::Error;

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("invalid system spec: {0}")]
    InvalidSpec(String),
    #[error("collision table has no entry for (l, n) = ({l}, {n})")]
    IncompleteTable { l: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
