use discretization::{FieldState, Grid};
use moment_basis::MomentSystem;

/// `Σ_j |cell| ρ_j` over the grid.
pub fn total_mass(system: &MomentSystem, grid: &Grid, state: &FieldState) -> f64 {
    let (row, scale) = system.density_channel();
    grid.cell_volume() * state.component(row).sum::<f64>() / scale
}

/// Shift the density channel uniformly so that the total mass equals `c`.
pub fn normalize_mass(system: &MomentSystem, grid: &Grid, state: &mut FieldState, c: f64) {
    let (row, scale) = system.density_channel();
    let volume = grid.cell_volume() * grid.n_cells() as f64;
    let shift = scale * (c - total_mass(system, grid, state)) / volume;
    if shift == 0.0 {
        return;
    }
    let n = state.n_vars;
    for j in 0..state.n_cells() {
        state.data[j * n + row] += shift;
    }
}
