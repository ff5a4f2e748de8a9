//! Local Fourier analysis of the block symmetric Gauss-Seidel family: the limit
//! symbols on the collision kernel, continuous-velocity symbols at finite Knudsen
//! number, and iteration symbols of finite moment systems on periodic grids.

pub mod discrete;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod spectrum;
pub mod stencil;
pub mod sweep;
pub mod velocity;

pub use discrete::{discrete_symbol, discrete_symbol_radius, method_steps, periodic_radius, IterationSpec};
pub use error::FourierError;
pub use kernel::{
    bsgs_lambda0, bsgs_lambda1, bsgs_sextic_roots, bssr_symbol, bssr_symbol_max, build_q, kernel_operators,
    kernel_pencil, lambda1_asymptote, pair_modulus, q_left_vector, q_null_vector, q_pencil, KernelOperators,
};
pub use linalg::C64;
pub use spectrum::SymbolSpectrum;
pub use stencil::{iteration_symbol, Stencil, Step};
pub use sweep::{sweep, write_sweep_csv, SymbolMethod, SymbolProblem, SymbolRow};
pub use velocity::{bsgs_mm_symbol, bsgs_symbol, velocity_symbol, DiscreteVelocity};
