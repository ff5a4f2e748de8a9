//! Iterative solvers for steady discrete moment systems: block symmetric Gauss-Seidel
//! (BSGS), its relaxed variant (BSSR), micro-macro and multiscale decompositions with
//! hybrid variants, a GSIS comparator and a sparse direct solve.

pub mod config;
pub mod engine;
pub mod error;
pub mod problem;
pub mod report;

pub use config::{InnerConfig, InnerMode, Method, SolverConfig};
pub use engine::{solve, solve_from, IterationOperator};
pub use error::SolverError;
pub use problem::Problem;
pub use report::{Counters, IterationReport};
