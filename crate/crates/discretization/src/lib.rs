//! Upwind finite-volume discretization of steady linear moment systems on uniform
//! 1D and 2D grids: flux splitting, first- and second-order stencils, residuals.

pub mod error;
pub mod flux;
pub mod grid;
pub mod io;
pub mod operator;
pub mod reconstruct;
pub mod state;

pub use error::DiscError;
pub use flux::{flux_split, FluxSplit};
pub use grid::Grid;
pub use io::{write_field_csv, write_macro_csv};
pub use operator::{assemble, assemble_with_slope_factor, CellRow, Closure, DirRow, DiscreteOperator, WallClosure};
pub use reconstruct::{reconstruct_faces, reconstruct_line, FaceValues};
pub use state::FieldState;
