use thiserror::Error;

use crate::report::IterationReport;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("singular diagonal block at cell {cell} (eps = {eps:e}, dx = {dx:e})")]
    BlockedPivot { cell: usize, eps: f64, dx: f64 },
    #[error("inner solve stalled after {iters} iterations at residual {residual:e}")]
    InnerStall { iters: usize, residual: f64, report: Box<IterationReport> },
    #[error("sparse factorization failed: {0}")]
    Factorization(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Disc(#[from] discretization::DiscError),
    #[error(transparent)]
    Boundary(#[from] boundary::BoundaryError),
    #[error(transparent)]
    Basis(#[from] moment_basis::BasisError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
