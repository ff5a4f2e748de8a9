use boundary::{normalize_mass, wall_closures, WallBC};
use discretization::{assemble, Closure, DiscreteOperator, FieldState, Grid};
use moment_basis::MomentSystem;

use crate::error::SolverError;

/// A steady discrete moment problem: system, grid, boundary closure and Knudsen number.
#[derive(Debug, Clone)]
pub struct Problem {
    pub system: MomentSystem,
    pub grid: Grid,
    pub closure: Closure,
    pub order: usize,
    pub eps: f64,
    /// Total mass `C`; the density is renormalized to it after every outer iteration.
    pub mass: Option<f64>,
}

impl Problem {
    pub fn walled(
        system: MomentSystem,
        grid: Grid,
        walls: &[WallBC],
        order: usize,
        eps: f64,
        mass: f64,
    ) -> Result<Self, SolverError> {
        let closure = wall_closures(&system, walls)?;
        Ok(Problem { system, grid, closure, order, eps, mass: Some(mass) })
    }

    pub fn periodic(system: MomentSystem, cells: usize, order: usize, eps: f64) -> Result<Self, SolverError> {
        let grid = Grid::periodic_line(cells)?;
        Ok(Problem { system, grid, closure: Closure::Periodic, order, eps, mass: None })
    }

    pub fn operator(&self) -> Result<DiscreteOperator, SolverError> {
        Ok(assemble(&self.system, &self.grid, &self.closure, self.order, self.eps)?)
    }

    /// Zero moments plus the uniform density carrying the total mass.
    pub fn initial_state(&self) -> FieldState {
        let mut s = FieldState::zeros(self.grid.n_cells(), self.system.n_vars(), self.eps);
        self.normalize(&mut s);
        s
    }

    pub fn normalize(&self, state: &mut FieldState) {
        if let Some(c) = self.mass {
            normalize_mass(&self.system, &self.grid, state, c);
        }
    }
}
