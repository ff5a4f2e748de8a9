//! Benchmark problems of the moment-solver study: 1D heat transfer with its exact
//! N = 5 solution, the heat-driven and lid-driven cavities, convergence studies
//! against the exact solution, and Fourier symbol sweeps.

pub mod convergence;
pub mod error;
pub mod flux;
pub mod oracle;
pub mod report;
pub mod run;
pub mod spec;
pub mod symbols;

pub use convergence::{
    convergence_study, default_ladder, discrete_solution, fitted_order, l2_error, richardson_reference,
    ConvergenceStudy,
};
pub use error::ExpError;
pub use flux::face_mass_flux;
pub use oracle::{exact_oracle_1d, ExactOracle};
pub use report::summarize;
pub use run::{run, RunOutcome};
pub use spec::{BasisSpec, ProblemKind, ProblemSpec, RunConfig};
pub use symbols::{eta_grid, symbol_sweep};
