use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error("degenerate wall: mass-flux elimination pivot {0:e}")]
    DegenerateWall(f64),
    #[error("invalid wall: {0}")]
    InvalidWall(String),
    #[error(transparent)]
    Disc(#[from] discretization::DiscError),
}
