use std::path::Path;

use boundary::{WallBC, WallSide};
use discretization::Grid;
use moment_basis::{build_burnett_system, build_hermite_system, BurnettSystemSpec, Collision, HermiteSystemSpec, MomentSystem};
use serde::{Deserialize, Serialize};
use solvers::{Problem, SolverConfig};

use crate::error::{ExpError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProblemKind {
    Heat1D,
    HeatCavity2D,
    LidCavity2D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BasisSpec {
    Hermite { n: usize },
    Burnett { l_trunc: usize },
}

impl BasisSpec {
    pub fn build(self) -> Result<MomentSystem> {
        Ok(match self {
            BasisSpec::Hermite { n } => build_hermite_system(HermiteSystemSpec { n })?,
            BasisSpec::Burnett { l_trunc } => build_burnett_system(BurnettSystemSpec { l_trunc, collision: Collision::Bgk })?,
        })
    }
}

fn default_order() -> usize {
    1
}

fn default_mass() -> f64 {
    1.0
}

/// A benchmark problem. Walls default to the benchmark's own when not listed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub problem: ProblemKind,
    pub basis: BasisSpec,
    /// Cells per direction.
    pub grid: Vec<usize>,
    pub epsilon: f64,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walls: Option<Vec<WallBC>>,
    #[serde(default = "default_mass")]
    pub total_mass: f64,
}

impl ProblemSpec {
    pub fn heat_1d(n: usize, cells: usize, eps: f64, order: usize) -> Self {
        ProblemSpec {
            problem: ProblemKind::Heat1D,
            basis: BasisSpec::Hermite { n },
            grid: vec![cells],
            epsilon: eps,
            order,
            walls: None,
            total_mass: 1.0,
        }
    }

    pub fn heat_cavity(l_trunc: usize, cells: usize, eps: f64, order: usize) -> Self {
        ProblemSpec {
            problem: ProblemKind::HeatCavity2D,
            basis: BasisSpec::Burnett { l_trunc },
            grid: vec![cells, cells],
            epsilon: eps,
            order,
            walls: None,
            total_mass: 1.0,
        }
    }

    pub fn lid_cavity(l_trunc: usize, cells: usize, eps: f64) -> Self {
        ProblemSpec {
            problem: ProblemKind::LidCavity2D,
            basis: BasisSpec::Burnett { l_trunc },
            grid: vec![cells, cells],
            epsilon: eps,
            order: 2,
            walls: None,
            total_mass: 1.0,
        }
    }

    /// Benchmark walls: 1D `T = 0` left and `T = 1` right; heat cavity hot top;
    /// lid cavity top moving at `(1, 0)`, all walls at one temperature.
    pub fn default_walls(&self) -> Vec<WallBC> {
        match self.problem {
            ProblemKind::Heat1D => vec![WallBC::new(WallSide::Left, 0.0), WallBC::new(WallSide::Right, 1.0)],
            ProblemKind::HeatCavity2D => vec![
                WallBC::new(WallSide::Left, 0.0),
                WallBC::new(WallSide::Right, 0.0),
                WallBC::new(WallSide::Bottom, 0.0),
                WallBC::new(WallSide::Top, 1.0),
            ],
            ProblemKind::LidCavity2D => vec![
                WallBC::new(WallSide::Left, 0.0),
                WallBC::new(WallSide::Right, 0.0),
                WallBC::new(WallSide::Bottom, 0.0),
                WallBC::new(WallSide::Top, 0.0).with_velocity(vec![1.0, 0.0]),
            ],
        }
    }

    pub fn walls(&self) -> Vec<WallBC> {
        self.walls.clone().unwrap_or_else(|| self.default_walls())
    }

    pub fn validate(&self) -> Result<()> {
        let dim = match self.problem {
            ProblemKind::Heat1D => 1,
            _ => 2,
        };
        let bad = |m: String| Err(ExpError::InvalidSpec(m));
        if self.grid.len() != dim {
            return bad(format!("{:?} needs {dim} grid sizes, got {:?}", self.problem, self.grid));
        }
        match (self.problem, self.basis) {
            (ProblemKind::Heat1D, BasisSpec::Hermite { .. }) => {}
            (ProblemKind::Heat1D, _) => return bad("Heat1D uses a Hermite basis".into()),
            (_, BasisSpec::Burnett { .. }) => {}
            _ => return bad(format!("{:?} uses a Burnett basis", self.problem)),
        }
        if self.problem == ProblemKind::LidCavity2D && self.order != 2 {
            return bad("the lid-driven cavity is run with the second-order scheme only".into());
        }
        if !(self.epsilon > 0.0) || !(self.total_mass > 0.0) {
            return bad(format!("ε = {}, C = {}", self.epsilon, self.total_mass));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Problem> {
        self.validate()?;
        let system = self.basis.build()?;
        let grid = Grid::new(self.grid.clone(), false)?;
        Ok(Problem::walled(system, grid, &self.walls(), self.order, self.epsilon, self.total_mass)?)
    }
}

/// One run: a problem and its solver settings, read from a single JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub spec: ProblemSpec,
    #[serde(default)]
    pub solver: SolverConfig,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
