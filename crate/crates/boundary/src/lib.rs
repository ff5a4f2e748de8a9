//! Fully diffusive walls for linear moment systems in the form
//! `u_odd = B u_even + g T_w + g_U · U_w`, with ghost-cell closures for the
//! finite-volume operator and total-mass normalization.

pub mod error;
pub mod mass;
pub mod wall;

pub use error::BoundaryError;
pub use mass::{normalize_mass, total_mass};
pub use wall::{build_wall_operator, half_space_points, wall_closures, BoundaryOperator, WallBC, WallSide};
