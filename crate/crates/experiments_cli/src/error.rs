use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExpError {
    #[error("invalid problem: {0}")]
    InvalidSpec(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error(transparent)]
    Solver(#[from] solvers::SolverError),
    #[error(transparent)]
    Basis(#[from] moment_basis::BasisError),
    #[error(transparent)]
    Boundary(#[from] boundary::BoundaryError),
    #[error(transparent)]
    Disc(#[from] discretization::DiscError),
    #[error(transparent)]
    Fourier(#[from] fourier_analysis::FourierError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, ExpError>;
