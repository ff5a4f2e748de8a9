use std::path::{Path, PathBuf};

use discretization::{write_field_csv, write_macro_csv, FieldState};
use solvers::{solve, IterationReport};

use crate::error::Result;
use crate::spec::RunConfig;

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub state: FieldState,
    pub report: IterationReport,
    pub files: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn converged(&self) -> bool {
        self.report.converged
    }
}

/// Solves one configuration and writes `field.csv`, `macro.csv`, `history.csv` and
/// `report.json` into `out`. Artifacts are written whether or not the solve converged.
pub fn run(config: &RunConfig, out: &Path) -> Result<RunOutcome> {
    let problem = config.spec.build()?;
    let (state, report) = solve(&problem, &config.solver)?;
    std::fs::create_dir_all(out)?;
    let files: Vec<PathBuf> =
        ["field.csv", "macro.csv", "history.csv", "report.json"].iter().map(|f| out.join(f)).collect();
    write_field_csv(&files[0], &problem.grid, &state)?;
    write_macro_csv(&files[1], &problem.grid, &problem.system, &state)?;
    report.write_history_csv(&files[2])?;
    report.write_json(&files[3], &config.solver)?;
    Ok(RunOutcome { state, report, files })
}
