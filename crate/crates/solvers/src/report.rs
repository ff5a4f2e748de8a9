use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::SolverConfig;
use crate::error::SolverError;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    /// Forward plus backward scan pairs over the cells, of any block.
    pub symmetric_sweeps: usize,
    pub macro_solves: usize,
    pub inner_iterations: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct IterationReport {
    pub residual_history: Vec<f64>,
    pub inner_counts: Vec<usize>,
    pub cumulative_seconds: Vec<f64>,
    /// `|total mass − C|` after each outer iteration (empty without a mass constraint).
    pub mass_defect: Vec<f64>,
    pub initial_residual: f64,
    pub converged: bool,
    pub diverged: bool,
    pub outer_iters: usize,
    pub wall_time: f64,
    pub counters: Counters,
}

impl IterationReport {
    pub fn final_residual(&self) -> f64 {
        self.residual_history.last().copied().unwrap_or(self.initial_residual)
    }

    /// Geometric-mean contraction over the last `k` iterations.
    pub fn decay_rate(&self, k: usize) -> Option<f64> {
        let h = &self.residual_history;
        if h.len() <= k || k == 0 {
            return None;
        }
        let (a, b) = (h[h.len() - 1 - k], h[h.len() - 1]);
        Some((b / a).powf(1.0 / k as f64))
    }

    pub fn write_history_csv(&self, path: &Path) -> Result<(), SolverError> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["outer_iter", "residual", "relative_residual", "inner_iters", "cumulative_seconds"])?;
        for (i, r) in self.residual_history.iter().enumerate() {
            w.write_record([
                (i + 1).to_string(),
                r.to_string(),
                (r / self.initial_residual).to_string(),
                self.inner_counts.get(i).copied().unwrap_or(0).to_string(),
                self.cumulative_seconds.get(i).copied().unwrap_or(0.0).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json(&self, path: &Path, config: &SolverConfig) -> Result<(), SolverError> {
        #[derive(Serialize)]
        struct Summary<'a> {
            config: &'a SolverConfig,
            converged: bool,
            diverged: bool,
            outer_iters: usize,
            initial_residual: f64,
            final_residual: f64,
            wall_time: f64,
            counters: &'a Counters,
        }
        let s = Summary {
            config,
            converged: self.converged,
            diverged: self.diverged,
            outer_iters: self.outer_iters,
            initial_residual: self.initial_residual,
            final_residual: self.final_residual(),
            wall_time: self.wall_time,
            counters: &self.counters,
        };
        std::fs::write(path, serde_json::to_string_pretty(&s)?)?;
        Ok(())
    }
}
