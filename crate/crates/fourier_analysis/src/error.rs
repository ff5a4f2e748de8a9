use thiserror::Error;

#[derive(Debug, Error)]
pub enum FourierError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("eigenvalue iteration did not converge for a {size}x{size} matrix")]
    NoConvergence { size: usize },
    #[error(transparent)]
    Disc(#[from] discretization::DiscError),
    #[error(transparent)]
    Basis(#[from] moment_basis::BasisError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FourierError>;
