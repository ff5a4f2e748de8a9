use std::f64::consts::PI;

use fourier_analysis::{sweep, SymbolMethod, SymbolProblem, SymbolRow};

use crate::error::Result;

/// `count` phases `2πk/(count + 1)`, `k = 1..=count`.
pub fn eta_grid(count: usize) -> Vec<f64> {
    (1..=count).map(|k| 2.0 * PI * k as f64 / (count + 1) as f64).collect()
}

/// Dominant moduli for every (method, ε, η) combination.
pub fn symbol_sweep(
    methods: &[SymbolMethod],
    epsilons: &[f64],
    etas: &[f64],
    alpha: f64,
    dx: f64,
    n_trunc: usize,
) -> Result<Vec<SymbolRow>> {
    let mut problems = Vec::new();
    for &method in methods {
        for &eps in epsilons {
            for &eta in etas {
                problems.push(SymbolProblem { method, eta, dx, eps, alpha, n_trunc });
            }
        }
    }
    Ok(sweep(&problems)?)
}
