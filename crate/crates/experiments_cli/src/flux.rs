use discretization::{flux_split, reconstruct_faces, FieldState};
use solvers::Problem;

use crate::error::Result;

/// Numerical mass flux `(A⁺ u⁻ + A⁻ u⁺)_ρ` through every face of a 1D problem, walls included.
/// This is the scheme's own flow velocity times the reference density.
pub fn face_mass_flux(problem: &Problem, state: &FieldState) -> Result<Vec<f64>> {
    let split = flux_split(&problem.system.a[0])?;
    let faces = reconstruct_faces(state, &problem.grid, problem.order, &problem.closure)?;
    let (row, scale) = problem.system.density_channel();
    Ok(faces
        .iter()
        .map(|f| (split.plus.row(row).dot(&f.minus.transpose()) + split.minus.row(row).dot(&f.plus.transpose())) / scale)
        .collect())
}
