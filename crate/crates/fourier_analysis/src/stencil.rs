//! Fourier symbols of block sweeps on the periodic upwind stencil.
//!
//! A mode `u_j = û e^{i j η}` turns every row of the stencil into
//! `(L(η) + D + U(η)) û`, with `L` collecting the blocks of cells to the left,
//! `U` those to the right and `D` the diagonal block including collision. Each
//! step of an iteration maps `û` linearly; composing the steps gives the
//! iteration symbol.

use std::ops::Range;

use discretization::flux_split;
use moment_basis::MomentSystem;
use nalgebra::DMatrix;

use crate::error::{FourierError, Result};
use crate::linalg::{cis, complexify, solve, C64};

/// Split flux blocks and collision diagonal of a 1D moment system.
#[derive(Debug, Clone)]
pub struct Stencil {
    pub order: usize,
    pub plus: DMatrix<f64>,
    pub minus: DMatrix<f64>,
    pub abs: DMatrix<f64>,
    pub l_diag: Vec<f64>,
    pub dx_over_eps: f64,
}

/// Symbol parts at one phase.
#[derive(Debug, Clone)]
pub struct Parts {
    pub lower: DMatrix<C64>,
    pub diag: DMatrix<C64>,
    pub upper: DMatrix<C64>,
}

impl Parts {
    pub fn full(&self) -> DMatrix<C64> {
        &self.lower + &self.diag + &self.upper
    }
}

/// One step of an iteration.
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    /// Exact solve of the rows in the range, other variables frozen.
    Exact(Range<usize>),
    /// Block Gauss-Seidel scan in increasing cell order over the rows in the range.
    Forward(Range<usize>),
    Backward(Range<usize>),
    /// Exact solve of the transport system with collision `(Δx/ε) I` and source `(Δx/ε)(I + L) u`.
    Transport,
}

impl Stencil {
    pub fn new(
        order: usize,
        plus: DMatrix<f64>,
        minus: DMatrix<f64>,
        abs: DMatrix<f64>,
        l_diag: Vec<f64>,
        dx_over_eps: f64,
    ) -> Result<Self> {
        if order != 1 && order != 2 {
            return Err(FourierError::InvalidParameter(format!("order {order}")));
        }
        if !(dx_over_eps >= 0.0 && dx_over_eps.is_finite()) {
            return Err(FourierError::InvalidParameter(format!("Δx/ε = {dx_over_eps}")));
        }
        let n = l_diag.len();
        if [&plus, &minus, &abs].iter().any(|m| m.shape() != (n, n)) {
            return Err(FourierError::InvalidParameter("block sizes disagree with the collision diagonal".into()));
        }
        Ok(Stencil { order, plus, minus, abs, l_diag, dx_over_eps })
    }

    /// Stencil of the x-direction of a moment system.
    pub fn from_system(system: &MomentSystem, order: usize, eps: f64, dx: f64) -> Result<Self> {
        if !(eps > 0.0 && dx > 0.0) {
            return Err(FourierError::InvalidParameter(format!("ε = {eps}, Δx = {dx}")));
        }
        let s = flux_split(&system.a[0])?;
        Stencil::new(order, s.plus, s.minus, s.abs, system.l_diag.clone(), dx / eps)
    }

    pub fn n(&self) -> usize {
        self.l_diag.len()
    }

    /// Off-diagonal blocks by cell offset.
    pub fn offsets(&self) -> Vec<(isize, DMatrix<f64>)> {
        let (p, m) = (&self.plus, &self.minus);
        match self.order {
            1 => vec![(-1, -p), (1, m.clone())],
            _ => vec![
                (-2, p * 0.25),
                (-1, -(p * 1.25) - m * 0.25),
                (1, p * 0.25 + m * 1.25),
                (2, -(m * 0.25)),
            ],
        }
    }

    fn abs_weight(&self) -> f64 {
        if self.order == 1 {
            1.0
        } else {
            0.75
        }
    }

    /// Diagonal block `c|A| - (Δx/ε) L`.
    pub fn diag(&self) -> DMatrix<f64> {
        let mut d = &self.abs * self.abs_weight();
        for (k, l) in self.l_diag.iter().enumerate() {
            d[(k, k)] -= self.dx_over_eps * l;
        }
        d
    }

    fn parts_with_diag(&self, diag: DMatrix<f64>, eta: f64) -> Parts {
        let n = self.n();
        let mut lower = DMatrix::zeros(n, n);
        let mut upper = DMatrix::zeros(n, n);
        for (k, b) in self.offsets() {
            let t = complexify(&b) * cis(k as f64 * eta);
            if k < 0 {
                lower += t;
            } else {
                upper += t;
            }
        }
        Parts { lower, diag: complexify(&diag), upper }
    }

    pub fn parts(&self, eta: f64) -> Parts {
        self.parts_with_diag(self.diag(), eta)
    }

    /// Parts of the transport system, collision replaced by `(Δx/ε) I`.
    pub fn transport_parts(&self, eta: f64) -> Parts {
        let mut d = &self.abs * self.abs_weight();
        for k in 0..self.n() {
            d[(k, k)] += self.dx_over_eps;
        }
        self.parts_with_diag(d, eta)
    }
}

/// Symbol of one step as an `n×n` map of the Fourier amplitude.
pub fn step_symbol(st: &Stencil, parts: &Parts, alpha: f64, step: &Step, eta: f64) -> Result<DMatrix<C64>> {
    let n = st.n();
    let mut m = DMatrix::<C64>::identity(n, n);
    let full = parts.full();
    let relax = complexify(&st.abs) * C64::new(alpha, 0.0);
    let rows = |r: &Range<usize>, mat: &DMatrix<C64>| mat.rows(r.start, r.len()).into_owned();
    match step {
        Step::Exact(r) | Step::Forward(r) | Step::Backward(r) => {
            let nr = r.len();
            let sub = |mat: &DMatrix<C64>| mat.view((r.start, r.start), (nr, nr)).into_owned();
            // z maps the old amplitude to the right-hand side of the solved rows
            let mut z = -rows(r, &full);
            let s = match step {
                Step::Exact(_) => {
                    z.view_mut((0, r.start), (nr, nr)).fill(C64::default());
                    sub(&full)
                }
                Step::Forward(_) => {
                    let own = sub(&relax) - sub(&parts.upper);
                    z.view_mut((0, r.start), (nr, nr)).copy_from(&own);
                    sub(&parts.diag) + sub(&relax) + sub(&parts.lower)
                }
                _ => {
                    let own = sub(&relax) - sub(&parts.lower);
                    z.view_mut((0, r.start), (nr, nr)).copy_from(&own);
                    sub(&parts.diag) + sub(&relax) + sub(&parts.upper)
                }
            };
            let new_rows = solve(&s, &z, &format!("block rows {r:?} at η = {eta}"))?;
            m.rows_mut(r.start, nr).copy_from(&new_rows);
        }
        Step::Transport => {
            let kt = st.transport_parts(eta).full();
            let src = DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    C64::new(st.dx_over_eps * (1.0 + st.l_diag[i]), 0.0)
                } else {
                    C64::default()
                }
            });
            m = solve(&kt, &src, "transport system")?;
        }
    }
    Ok(m)
}

/// Composed symbol of a sequence of steps (applied in order).
pub fn iteration_symbol(st: &Stencil, steps: &[Step], alpha: f64, eta: f64) -> Result<DMatrix<C64>> {
    let parts = st.parts(eta);
    let n = st.n();
    let mut m = DMatrix::<C64>::identity(n, n);
    for s in steps {
        m = step_symbol(st, &parts, alpha, s, eta)? * m;
    }
    Ok(m)
}
