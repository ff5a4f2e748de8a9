use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiscError {
    #[error("matrix is not hyperbolic: eigenvalue with imaginary part {0:e}")]
    NonHyperbolic(f64),
    #[error("matrix is not diagonalizable near eigenvalue {0}")]
    NotDiagonalizable(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Basis(#[from] moment_basis::BasisError),
}
