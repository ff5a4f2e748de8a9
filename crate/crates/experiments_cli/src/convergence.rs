use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use solvers::{solve, Method, SolverConfig};

use crate::error::{ExpError, Result};
use crate::oracle::{exact_oracle_1d, ExactOracle};
use crate::spec::ProblemSpec;

/// `M = 80 · 2^j`, `j = 0..levels`.
pub fn default_ladder(levels: usize) -> Vec<usize> {
    (0..levels).map(|j| 80 << j).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub order: usize,
    pub ladder: Vec<usize>,
    pub epsilons: Vec<f64>,
    /// `errors[i][j]`: `ε_i` on `M_j`.
    pub errors: Vec<Vec<f64>>,
    /// Least-squares convergence order per `ε`.
    pub slopes: Vec<f64>,
}

/// `√((1/M) Σ_j ‖ū_j − cell average of u^exact‖²)`.
pub fn l2_error(oracle: &ExactOracle, cells: &[Vec<f64>]) -> f64 {
    let m = cells.len();
    let exact = oracle.cell_averages(m);
    let s: f64 = cells
        .iter()
        .zip(&exact)
        .map(|(u, e)| u.iter().zip(e.iter()).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
        .sum();
    (s / m as f64).sqrt()
}

/// Negative least-squares slope of `log err` against `log M`.
pub fn fitted_order(ladder: &[usize], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = ladder.iter().map(|&m| (m as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    -sxy / sxx
}

/// Direct solution of the N = 5 heat-transfer problem, as cell vectors.
pub fn discrete_solution(order: usize, eps: f64, m: usize) -> Result<Vec<Vec<f64>>> {
    let p = ProblemSpec::heat_1d(5, m, eps, order).build()?;
    let (s, r) = solve(&p, &SolverConfig::new(Method::Direct))?;
    if !r.converged {
        return Err(ExpError::Oracle(format!("direct solve at M = {m}: residual {:e}", r.final_residual())));
    }
    Ok((0..s.n_cells()).map(|j| s.cell(j).to_vec()).collect())
}

/// Richardson extrapolation of direct solutions on `m` and `2m` cells, on the `m` cells.
/// Independent of the exact oracle; used to cross-check it.
pub fn richardson_reference(order: usize, eps: f64, m: usize) -> Result<Vec<Vec<f64>>> {
    let coarse = discrete_solution(order, eps, m)?;
    let fine = discrete_solution(order, eps, 2 * m)?;
    let w = (1u32 << order) as f64;
    Ok(coarse
        .iter()
        .enumerate()
        .map(|(j, c)| {
            c.iter()
                .enumerate()
                .map(|(k, ck)| (w * 0.5 * (fine[2 * j][k] + fine[2 * j + 1][k]) - ck) / (w - 1.0))
                .collect()
        })
        .collect())
}

pub fn convergence_study(order: usize, epsilons: &[f64], ladder: &[usize]) -> Result<ConvergenceStudy> {
    if ladder.len() < 2 || ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ExpError::InvalidSpec(format!("grid ladder {ladder:?} is not strictly refining")));
    }
    let errors = epsilons
        .par_iter()
        .map(|&eps| {
            let oracle = exact_oracle_1d(&ProblemSpec::heat_1d(5, ladder[0], eps, order))?;
            ladder.par_iter().map(|&m| Ok(l2_error(&oracle, &discrete_solution(order, eps, m)?))).collect()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let slopes = errors.iter().map(|e| fitted_order(ladder, e)).collect();
    Ok(ConvergenceStudy { order, ladder: ladder.to_vec(), epsilons: epsilons.to_vec(), errors, slopes })
}

impl ConvergenceStudy {
    /// Long format: `order, epsilon, M, dx, l2_error`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["order", "epsilon", "M", "dx", "l2_error"])?;
        for (i, eps) in self.epsilons.iter().enumerate() {
            for (j, m) in self.ladder.iter().enumerate() {
                w.write_record([
                    self.order.to_string(),
                    eps.to_string(),
                    m.to_string(),
                    (1.0 / *m as f64).to_string(),
                    self.errors[i][j].to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}
