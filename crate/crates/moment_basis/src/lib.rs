//! Moment systems of the linearized Boltzmann equation: the 1D Hermite system and the
//! 2D-space/3D-velocity Burnett system, with block partitions for micro-macro and
//! multiscale iterations.

pub mod burnett;
pub mod error;
pub mod hermite;
pub mod partition;
pub mod quadrature;
pub mod system;

pub use burnett::{build_burnett_system, BurnettSystemSpec};
pub use error::BasisError;
pub use hermite::{build_hermite_system, hermite_advection, HermiteSystemSpec};
pub use partition::{default_cutoff, partition, BlockPartition, Scheme};
pub use system::{Basis, Collision, CollisionTable, Label, Macro, MomentSystem};
