use std::ops::Range;

use moment_basis::{default_cutoff, partition, MomentSystem, Scheme};
use solvers::Method;

use crate::error::{FourierError, Result};
use crate::kernel::check_eta;
use crate::linalg::eigenvalues;
use crate::spectrum::SymbolSpectrum;
use crate::stencil::{iteration_symbol, Stencil, Step};

/// Parameters of a finite-`N` iteration symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationSpec {
    pub method: Method,
    pub order: usize,
    pub eps: f64,
    pub dx: f64,
    pub alpha: f64,
    pub n_b: usize,
    /// Micro-macro cutoff; the basis default when absent.
    pub cutoff: Option<usize>,
}

impl IterationSpec {
    /// Order 2 for BSSR, order 1 otherwise.
    pub fn new(method: Method, eps: f64, dx: f64) -> Self {
        let order = if method == Method::Bssr { 2 } else { 1 };
        IterationSpec { method, order, eps, dx, alpha: 0.0, n_b: 0, cutoff: None }
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn n_b(mut self, n_b: usize) -> Self {
        self.n_b = n_b;
        self
    }

    pub fn order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    /// Relaxation actually applied; plain BSGS has none.
    pub fn effective_alpha(&self) -> f64 {
        if self.method == Method::Bsgs {
            0.0
        } else {
            self.alpha
        }
    }
}

/// Steps of one outer iteration, given the block ranges of the decomposition
/// (unused by the undecomposed methods).
pub fn method_steps(method: Method, n_b: usize, blocks: &[Range<usize>], n: usize) -> Result<Vec<Step>> {
    let full = [Step::Forward(0..n), Step::Backward(0..n)];
    let decomposition = || {
        let mut s = vec![Step::Exact(blocks[0].clone())];
        s.extend(blocks[1..].iter().flat_map(|b| [Step::Forward(b.clone()), Step::Backward(b.clone())]));
        s
    };
    Ok(match method {
        Method::Bsgs | Method::Bssr => full.to_vec(),
        Method::BsgsMm | Method::BsgsMs => decomposition(),
        Method::HybridMm | Method::HybridMs => {
            let mut s: Vec<Step> = (0..n_b).flat_map(|_| full.clone()).collect();
            s.extend(decomposition());
            s
        }
        Method::Gsis => vec![Step::Exact(blocks[0].clone()), Step::Transport],
        Method::Direct => return Err(FourierError::InvalidParameter("a direct solve has no iteration symbol".into())),
    })
}

pub fn block_ranges(system: &MomentSystem, spec: &IterationSpec) -> Result<Vec<Range<usize>>> {
    let scheme = match spec.method {
        Method::BsgsMs | Method::HybridMs => Scheme::MultiScale,
        _ => Scheme::MicroMacro { cutoff: spec.cutoff.unwrap_or_else(|| default_cutoff(system)) },
    };
    Ok(partition(system, scheme)?.blocks)
}

/// Symbol of one outer iteration on a periodic grid.
pub fn discrete_symbol(system: &MomentSystem, spec: &IterationSpec, eta: f64) -> Result<SymbolSpectrum> {
    check_eta(eta)?;
    if system.dim_x() != 1 {
        return Err(FourierError::InvalidParameter("the symbol analysis is one-dimensional".into()));
    }
    let st = Stencil::from_system(system, spec.order, spec.eps, spec.dx)?;
    let blocks = if matches!(spec.method, Method::Bsgs | Method::Bssr) {
        vec![0..st.n()]
    } else {
        block_ranges(system, spec)?
    };
    stencil_spectrum(&st, spec.method, spec.effective_alpha(), spec.n_b, &blocks, eta)
}

pub(crate) fn stencil_spectrum(
    st: &Stencil,
    method: Method,
    alpha: f64,
    n_b: usize,
    blocks: &[Range<usize>],
    eta: f64,
) -> Result<SymbolSpectrum> {
    let steps = method_steps(method, n_b, blocks, st.n())?;
    let m = iteration_symbol(st, &steps, alpha, eta)?;
    Ok(SymbolSpectrum::from_roots(eigenvalues(m)?))
}

pub fn discrete_symbol_radius(
    system: &MomentSystem,
    method: Method,
    eps: f64,
    eta: f64,
    dx: f64,
    alpha: f64,
    n_b: usize,
) -> Result<f64> {
    let spec = IterationSpec::new(method, eps, dx).alpha(alpha).n_b(n_b);
    Ok(discrete_symbol(system, &spec, eta)?.radius())
}

/// Largest radius over the phases `2πk/m`, `k = 1..m-1`: the predicted decay rate on `m` periodic cells.
pub fn periodic_radius(system: &MomentSystem, spec: &IterationSpec, m: usize) -> Result<f64> {
    let mut r: f64 = 0.0;
    for k in 1..m {
        let eta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
        r = r.max(discrete_symbol(system, spec, eta)?.radius());
    }
    Ok(r)
}
