//! Continuous-velocity symbols. The velocity line is discretized by a double
//! half-range Gauss rule, which integrates `v^±` times polynomials exactly on each
//! half line. In the orthonormal frame whose leading columns are the Hermite
//! functions, the discrete-velocity model is a moment system with BGK collision.

use std::ops::Range;

use moment_basis::hermite::hermite_values;
use moment_basis::quadrature::maxwell_half_range;
use nalgebra::{DMatrix, SymmetricEigen};
use solvers::Method;

use crate::discrete::stencil_spectrum;
use crate::error::{FourierError, Result};
use crate::kernel::check_eta;
use crate::spectrum::SymbolSpectrum;
use crate::stencil::Stencil;

/// Size of the macro block `ψ_0..ψ_3` of the micro-macro split.
pub const MACRO_SIZE: usize = 4;

#[derive(Debug, Clone)]
pub struct DiscreteVelocity {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl DiscreteVelocity {
    /// `n_half` Gauss nodes on each half line.
    pub fn new(n_half: usize) -> Result<Self> {
        if n_half < 4 {
            return Err(FourierError::InvalidParameter(format!("{n_half} nodes per half line")));
        }
        let r = maxwell_half_range(n_half);
        let nodes = r.nodes.iter().rev().map(|x| -x).chain(r.nodes.iter().copied()).collect();
        let weights = r.weights.iter().rev().chain(r.weights.iter()).copied().collect();
        Ok(DiscreteVelocity { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Orthonormal frame in the `√w`-scaled coordinates: normalized Hermite functions
    /// `ψ_0..ψ_{k-1}` first, then an orthonormal complement.
    pub fn frame(&self, k: usize) -> DMatrix<f64> {
        let n = self.len();
        let mut fact = 1.0;
        let norms: Vec<f64> = (0..k)
            .map(|m| {
                if m > 0 {
                    fact *= m as f64;
                }
                fact.sqrt()
            })
            .collect();
        let b = DMatrix::from_fn(n, k, |i, m| {
            hermite_values(k - 1, self.nodes[i])[m] / norms[m] * self.weights[i].sqrt()
        });
        let rest = DMatrix::<f64>::identity(n, n) - &b * b.transpose();
        let eig = SymmetricEigen::new(rest);
        let cols: Vec<usize> = (0..n).filter(|&j| eig.eigenvalues[j] > 0.5).collect();
        let mut q = DMatrix::zeros(n, n);
        q.columns_mut(0, k).copy_from(&b);
        for (c, &j) in cols.iter().enumerate() {
            q.column_mut(k + c).copy_from(&eig.eigenvectors.column(j));
        }
        q
    }

    /// Upwind stencil of the discrete-velocity BGK model in the Hermite frame.
    pub fn stencil(&self, order: usize, eps: f64, dx: f64) -> Result<Stencil> {
        if !(eps > 0.0 && dx > 0.0) {
            return Err(FourierError::InvalidParameter(format!("ε = {eps}, Δx = {dx}")));
        }
        let n = self.len();
        let q = self.frame(MACRO_SIZE);
        let rotate = |f: fn(f64) -> f64| {
            let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, self.nodes.iter().map(|&v| f(v))));
            q.transpose() * d * &q
        };
        let plus = rotate(|v| v.max(0.0));
        let minus = rotate(|v| v.min(0.0));
        let abs = rotate(f64::abs);
        let l_diag = (0..n).map(|k| if k < 3 { 0.0 } else { -1.0 }).collect();
        Stencil::new(order, plus, minus, abs, l_diag, dx / eps)
    }

    pub fn macro_blocks(&self) -> Vec<Range<usize>> {
        vec![0..MACRO_SIZE, MACRO_SIZE..self.len()]
    }
}

/// Continuous-velocity symbol of an iteration method.
pub fn velocity_symbol(
    method: Method,
    order: usize,
    eps: f64,
    eta: f64,
    dx: f64,
    alpha: f64,
    n_trunc: usize,
) -> Result<SymbolSpectrum> {
    check_eta(eta)?;
    let dv = DiscreteVelocity::new(n_trunc)?;
    let st = dv.stencil(order, eps, dx)?;
    let alpha = if method == Method::Bsgs { 0.0 } else { alpha };
    let blocks = if matches!(method, Method::Bsgs | Method::Bssr) { vec![0..dv.len()] } else { dv.macro_blocks() };
    if matches!(method, Method::BsgsMs | Method::HybridMs) {
        return Err(FourierError::InvalidParameter("multiscale blocks need a moment system".into()));
    }
    stencil_spectrum(&st, method, alpha, 0, &blocks, eta)
}

/// Full first-order BSGS symbol at finite `ε`.
pub fn bsgs_symbol(eps: f64, eta: f64, dx: f64, n_trunc: usize) -> Result<SymbolSpectrum> {
    velocity_symbol(Method::Bsgs, 1, eps, eta, dx, 0.0, n_trunc)
}

/// First-order BSGS-MM symbol with macro block `ψ_0..ψ_3`.
pub fn bsgs_mm_symbol(eps: f64, eta: f64, dx: f64, n_trunc: usize) -> Result<SymbolSpectrum> {
    if n_trunc < 8 {
        return Err(FourierError::InvalidParameter(format!("truncation {n_trunc} < 8")));
    }
    velocity_symbol(Method::BsgsMm, 1, eps, eta, dx, 0.0, n_trunc)
}
