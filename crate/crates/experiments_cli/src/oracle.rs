//! Exact steady solution of the 1D heat-transfer problem on `[0, 1]`:
//! `A u' = L u / ε` with diffusive walls and the total-mass constraint.
//! Solutions are spanned by exponential modes `r e^{μ x}` for the nonzero eigenvalues
//! of `M = ε⁻¹ A⁻¹ L` and by polynomial modes on its nilpotent invariant subspace.

use boundary::build_wall_operator;
use nalgebra::{DMatrix, DVector};

use crate::error::{ExpError, Result};
use crate::spec::{BasisSpec, ProblemKind, ProblemSpec};

#[derive(Debug, Clone)]
struct ExpMode {
    mu: f64,
    r: DVector<f64>,
    /// Anchor `0` for decaying modes and `1` for growing ones, keeping `|e^{μ(x - x0)}| ≤ 1`.
    x0: f64,
}

#[derive(Debug, Clone)]
pub struct ExactOracle {
    modes: Vec<ExpMode>,
    /// Polynomial part `Σ_p x^p poly[p]`.
    poly: Vec<DVector<f64>>,
    a: DMatrix<f64>,
    l: DMatrix<f64>,
    eps: f64,
    /// Condition number of the constraint matrix.
    pub condition: f64,
}

/// Right singular vectors of the `k` smallest singular values.
fn null_space(m: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let n = m.ncols();
    let mut padded = DMatrix::zeros(m.nrows().max(n), n);
    padded.rows_mut(0, m.nrows()).copy_from(m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    DMatrix::from_fn(n, k, |i, c| vt[(order[c], i)])
}

pub fn exact_oracle_1d(spec: &ProblemSpec) -> Result<ExactOracle> {
    if spec.problem != ProblemKind::Heat1D || spec.basis != (BasisSpec::Hermite { n: 5 }) {
        return Err(ExpError::InvalidSpec("the exact oracle is built for Heat1D with N = 5".into()));
    }
    spec.validate()?;
    let system = spec.basis.build()?;
    let n = system.n_vars();
    let a = system.a[0].clone();
    let l = system.lmat();
    let eps = spec.epsilon;
    let m = a.clone().lu().solve(&(&l / eps)).ok_or_else(|| ExpError::Oracle("singular advection matrix".into()))?;

    let scale = m.amax();
    let mut mus: Vec<f64> = Vec::new();
    for z in m.complex_eigenvalues().iter() {
        if z.norm() > 1e-8 * scale {
            if z.im.abs() > 1e-8 * z.norm() {
                return Err(ExpError::Oracle(format!("complex mode {z}")));
            }
            mus.push(z.re);
        }
    }
    let eye = DMatrix::<f64>::identity(n, n);
    let mut modes = Vec::new();
    let mut left = DMatrix::zeros(mus.len(), n);
    for (i, &mu) in mus.iter().enumerate() {
        let r = null_space(&(&m - &eye * mu), 1).column(0).into_owned();
        let lv = null_space(&(m.transpose() - &eye * mu), 1).column(0).into_owned();
        left.row_mut(i).copy_from(&lv.transpose());
        modes.push(ExpMode { mu, r, x0: if mu < 0.0 { 0.0 } else { 1.0 } });
    }
    let k = n - mus.len();
    let z = null_space(&left, k);
    let nz = z.transpose() * &m * &z;
    // exp(x N) = Σ x^p N^p / p! for nilpotent N
    let mut poly_basis = vec![z.clone()];
    let mut np = DMatrix::<f64>::identity(k, k);
    for p in 1..k {
        np = &np * &nz / p as f64;
        poly_basis.push(&z * &np);
    }

    // unknowns: one amplitude per exponential mode, then the polynomial coordinates
    let unknowns = mus.len() + k;
    let eval_value = |x: f64| -> DMatrix<f64> {
        let mut e = DMatrix::zeros(n, unknowns);
        for (i, md) in modes.iter().enumerate() {
            e.column_mut(i).copy_from(&(&md.r * (md.mu * (x - md.x0)).exp()));
        }
        for (p, b) in poly_basis.iter().enumerate() {
            let mut view = e.columns_mut(mus.len(), k);
            view += b * x.powi(p as i32);
        }
        e
    };
    let eval_integral = || -> DMatrix<f64> {
        let mut e = DMatrix::zeros(n, unknowns);
        for (i, md) in modes.iter().enumerate() {
            let w = ((md.mu * (1.0 - md.x0)).exp() - (-md.mu * md.x0).exp()) / md.mu;
            e.column_mut(i).copy_from(&(&md.r * w));
        }
        for (p, b) in poly_basis.iter().enumerate() {
            let mut view = e.columns_mut(mus.len(), k);
            view += b / (p + 1) as f64;
        }
        e
    };

    let walls = spec.walls();
    let mut rows: Vec<(DVector<f64>, f64)> = Vec::new();
    for w in &walls {
        let op = build_wall_operator(&system, w)?;
        let x = if w.wall.is_high() { 1.0 } else { 0.0 };
        let e = eval_value(x);
        let f = op.forcing();
        for (r, &odd) in op.odd.iter().enumerate() {
            let mut row = e.row(odd).transpose();
            for (c, &even) in op.even.iter().enumerate() {
                row -= e.row(even).transpose() * op.b[(r, c)];
            }
            rows.push((row, f[r]));
        }
    }
    let rho = system.density_coeffs();
    rows.push(((rho.transpose() * eval_integral()).transpose(), spec.total_mass));

    let c = DMatrix::from_fn(rows.len(), unknowns, |i, j| rows[i].0[j]);
    let rhs = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let svd = c.clone().svd(true, true);
    let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
    let condition = smax / smin;
    if !(condition < 1e13) {
        return Err(ExpError::Oracle(format!("constraint matrix condition number {condition:e}")));
    }
    let coef = svd.solve(&rhs, 0.0).map_err(|e| ExpError::Oracle(e.into()))?;

    let mut modes_out = modes.clone();
    for (i, md) in modes_out.iter_mut().enumerate() {
        md.r *= coef[i];
    }
    let d = coef.rows(mus.len(), k);
    let poly = poly_basis.iter().map(|b| b * d).collect();
    Ok(ExactOracle { modes: modes_out, poly, a, l, eps, condition })
}

impl ExactOracle {
    pub fn value(&self, x: f64) -> DVector<f64> {
        let mut u = DVector::zeros(self.a.nrows());
        for md in &self.modes {
            u += &md.r * (md.mu * (x - md.x0)).exp();
        }
        for (p, c) in self.poly.iter().enumerate() {
            u += c * x.powi(p as i32);
        }
        u
    }

    pub fn derivative(&self, x: f64) -> DVector<f64> {
        let mut u = DVector::zeros(self.a.nrows());
        for md in &self.modes {
            u += &md.r * (md.mu * (md.mu * (x - md.x0)).exp());
        }
        for (p, c) in self.poly.iter().enumerate().skip(1) {
            u += c * (p as f64 * x.powi(p as i32 - 1));
        }
        u
    }

    /// `(1/(b - a)) ∫_a^b u dx`.
    pub fn average(&self, a: f64, b: f64) -> DVector<f64> {
        let h = b - a;
        let mut u = DVector::zeros(self.a.nrows());
        for md in &self.modes {
            let z = md.mu * h;
            let f = if z.abs() < 1e-12 { 1.0 } else { z.exp_m1() / z };
            u += &md.r * ((md.mu * (a - md.x0)).exp() * f);
        }
        for (p, c) in self.poly.iter().enumerate() {
            let q = (p + 1) as i32;
            u += c * ((b.powi(q) - a.powi(q)) / (q as f64 * h));
        }
        u
    }

    /// Cell averages on `m` uniform cells.
    pub fn cell_averages(&self, m: usize) -> Vec<DVector<f64>> {
        (0..m).map(|j| self.average(j as f64 / m as f64, (j + 1) as f64 / m as f64)).collect()
    }

    /// Largest `|A u' - L u / ε|` over `samples + 1` points, relative to `|L u / ε|`.
    pub fn ode_residual(&self, samples: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..=samples {
            let x = i as f64 / samples as f64;
            let u = self.value(x);
            let lhs = &self.a * self.derivative(x);
            let rhs = &self.l * &u / self.eps;
            worst = worst.max((lhs - &rhs).amax() / (1.0 + rhs.amax()));
        }
        worst
    }

    pub fn n_exponential_modes(&self) -> usize {
        self.modes.len()
    }
}
