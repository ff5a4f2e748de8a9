use std::ops::Range;

use discretization::{Closure, DiscreteOperator, FieldState};
use faer::prelude::Solve;
use faer::sparse::{SparseColMat, Triplet};
use moment_basis::{default_cutoff, partition, BlockPartition, Scheme};
use nalgebra::{DMatrix, DVector, DVectorView, DVectorViewMut, Dyn, LU};

use crate::config::{InnerMode, Method, SolverConfig};
use crate::error::SolverError;
use crate::problem::Problem;
use crate::report::{Counters, IterationReport};

/// Solver for one diagonal block. A block with a vanishing density column (a lone
/// walled cell) is solved in the least-squares sense with the density held; the
/// mass normalization fixes it afterwards.
enum BlockSolver {
    Lu(LU<f64, Dyn, Dyn>),
    Pinv(DMatrix<f64>),
}

impl BlockSolver {
    fn solve_mut(&self, v: &mut DVector<f64>) -> bool {
        match self {
            BlockSolver::Lu(lu) => lu.solve_mut(v),
            BlockSolver::Pinv(p) => {
                *v = p * &*v;
                true
            }
        }
    }
}

/// Per-diagonal-class factorizations of `D_j[r,r] + α R[r,r]` for one row range.
struct Factored {
    range: Range<usize>,
    lus: Vec<BlockSolver>,
}

struct SparseSolve {
    range: Range<usize>,
    pin: Option<usize>,
    lu: faer::sparse::linalg::solvers::Lu<usize, f64>,
}

/// GSIS transport system: collision replaced by `(Δx/ε) I`, source `(Δx/ε)(I + L) u*`.
struct Transport {
    op: DiscreteOperator,
    full: Factored,
    source_scale: Vec<f64>,
}

/// One outer iteration of a configured method, with cached factorizations.
pub struct IterationOperator {
    pub op: DiscreteOperator,
    pub config: SolverConfig,
    pub partition: Option<BlockPartition>,
    pub counters: Counters,
    alpha: f64,
    factored: Vec<Factored>,
    sparse: Option<SparseSolve>,
    transport: Option<Transport>,
    last_inner: usize,
}

fn gemv_rows(out: &mut [f64], m: &DMatrix<f64>, r: &Range<usize>, x: &[f64]) {
    let mut o = DVectorViewMut::from_slice(out, r.len());
    o.gemv(1.0, &m.rows(r.start, r.len()), &DVectorView::from_slice(x, m.ncols()), 1.0);
}

/// Rows `r` of stencil row `j` at state `u`, minus an optional source.
fn rows_eval(op: &DiscreteOperator, j: usize, u: &[f64], r: &Range<usize>, src: Option<&[f64]>, out: &mut [f64]) {
    let n = op.n;
    let row = &op.rows[j];
    match row.rhs {
        Some(c) => out.copy_from_slice(&op.consts[c].as_slice()[r.clone()]),
        None => out.fill(0.0),
    }
    if let Some(s) = src {
        for (o, v) in out.iter_mut().zip(&s[j * n + r.start..j * n + r.end]) {
            *o -= v;
        }
    }
    for &(k, b) in &row.nbrs {
        gemv_rows(out, &op.blocks[b], r, &u[k * n..(k + 1) * n]);
    }
    gemv_rows(out, op.diag(j), r, &u[j * n..(j + 1) * n]);
}

fn block_solver(s: DMatrix<f64>, rho: Option<usize>) -> Option<BlockSolver> {
    if let Some(rho) = rho.filter(|&k| s.column(k).amax() <= 1e-13 * s.amax()) {
        // least squares on the remaining columns; the density correction stays zero
        let qr = s.remove_column(rho).qr();
        let rinv = qr.r().try_inverse()?;
        let p = (rinv * qr.q().transpose()).insert_row(rho, 0.0);
        return p.iter().all(|x| x.is_finite()).then_some(BlockSolver::Pinv(p));
    }
    let lu = s.lu();
    lu.is_invertible().then_some(BlockSolver::Lu(lu))
}

fn factor(op: &DiscreteOperator, r: Range<usize>, alpha: f64, rho: usize) -> Result<Factored, SolverError> {
    let mut lus = Vec::with_capacity(op.diag_pool.len());
    let local_rho = r.contains(&rho).then(|| rho - r.start);
    for (id, d) in op.diag_pool.iter().enumerate() {
        let mut s = d.view((r.start, r.start), (r.len(), r.len())).clone_owned();
        if alpha != 0.0 {
            s += op.relax.view((r.start, r.start), (r.len(), r.len())) * alpha;
        }
        match block_solver(s, local_rho) {
            Some(b) => lus.push(b),
            None => {
                let cell = op.rows.iter().position(|row| row.diag == id).unwrap_or(0);
                return Err(SolverError::BlockedPivot { cell, eps: op.eps, dx: op.grid.dx() });
            }
        }
    }
    Ok(Factored { range: r, lus })
}

/// Forward or backward block Gauss-Seidel scan over the rows `f.range`, in correction form.
fn scan(op: &DiscreteOperator, f: &Factored, u: &mut [f64], forward: bool, src: Option<&[f64]>) -> Result<(), SolverError> {
    let n = op.n;
    let r = &f.range;
    let mut buf = vec![0.0; r.len()];
    let mut v = DVector::zeros(r.len());
    let m = op.n_cells();
    for step in 0..m {
        let j = if forward { step } else { m - 1 - step };
        rows_eval(op, j, u, r, src, &mut buf);
        v.as_mut_slice().copy_from_slice(&buf);
        if !f.lus[op.rows[j].diag].solve_mut(&mut v) {
            return Err(SolverError::BlockedPivot { cell: j, eps: op.eps, dx: op.grid.dx() });
        }
        for (x, d) in u[j * n + r.start..j * n + r.end].iter_mut().zip(v.iter()) {
            *x -= d;
        }
    }
    Ok(())
}

fn range_norm(op: &DiscreteOperator, u: &[f64], r: &Range<usize>, src: Option<&[f64]>) -> f64 {
    let mut buf = vec![0.0; r.len()];
    let mut s = 0.0;
    for j in 0..op.n_cells() {
        rows_eval(op, j, u, r, src, &mut buf);
        s += buf.iter().map(|x| x * x).sum::<f64>();
    }
    (s / op.n_cells() as f64).sqrt()
}

fn sparse_factor(op: &DiscreteOperator, r: Range<usize>, pin: Option<usize>) -> Result<SparseSolve, SolverError> {
    let nr = r.len();
    let size = nr * op.n_cells();
    let mut trip = Vec::new();
    let mut push = |j: usize, k: usize, b: &DMatrix<f64>| {
        for c in 0..nr {
            for i in 0..nr {
                let x = b[(r.start + i, r.start + c)];
                let row = j * nr + i;
                if x != 0.0 && Some(row) != pin {
                    trip.push(Triplet::new(row, k * nr + c, x));
                }
            }
        }
    };
    for j in 0..op.n_cells() {
        push(j, j, op.diag(j));
        for &(k, b) in &op.rows[j].nbrs {
            push(j, k, &op.blocks[b]);
        }
    }
    if let Some(p) = pin {
        trip.push(Triplet::new(p, p, 1.0));
    }
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(size, size, &trip)
        .map_err(|e| SolverError::Factorization(format!("{e:?}")))?;
    let lu = mat.sp_lu().map_err(|e| SolverError::Factorization(format!("{e:?}")))?;
    Ok(SparseSolve { range: r, pin, lu })
}

impl IterationOperator {
    pub fn new(problem: &Problem, config: &SolverConfig) -> Result<Self, SolverError> {
        config.validate().map_err(SolverError::InvalidConfig)?;
        let op = problem.operator()?;
        let sys = &problem.system;
        let method = config.method;
        let alpha = if method == Method::Bsgs { 0.0 } else { config.alpha };
        let walled = matches!(problem.closure, Closure::Walls(_));

        let partition = match method {
            Method::BsgsMm | Method::HybridMm | Method::Gsis => {
                let cutoff = config.cutoff.unwrap_or_else(|| default_cutoff(sys));
                Some(partition(sys, Scheme::MicroMacro { cutoff })?)
            }
            Method::BsgsMs | Method::HybridMs => Some(partition(sys, Scheme::MultiScale)?),
            _ => None,
        };

        let mut ranges: Vec<Range<usize>> = Vec::new();
        if matches!(method, Method::Bsgs | Method::Bssr | Method::HybridMm | Method::HybridMs) {
            ranges.push(0..op.n);
        }
        if let Some(p) = &partition {
            let iterative_macro = config.inner.mode == InnerMode::Iterative;
            for (k, b) in p.blocks.iter().enumerate() {
                if (k > 0 && method != Method::Gsis) || (k == 0 && iterative_macro) {
                    ranges.push(b.clone());
                }
            }
        }
        let (rho_row, _) = sys.density_channel();
        let factored = ranges
            .into_iter()
            .map(|r| factor(&op, r, alpha, rho_row))
            .collect::<Result<Vec<_>, _>>()?;

        let needs_sparse = method == Method::Direct
            || (partition.is_some() && config.inner.mode == InnerMode::Direct);
        let sparse = if needs_sparse {
            if !walled {
                return Err(SolverError::InvalidConfig(
                    "direct solves need a walled domain to pin the density".into(),
                ));
            }
            let r = if method == Method::Direct { 0..op.n } else { partition.as_ref().unwrap().macro_block() };
            // The density is fixed only up to a constant; pin it in cell 0 and renormalize.
            let pin = r.contains(&rho_row).then_some(rho_row - r.start);
            Some(sparse_factor(&op, r, pin)?)
        } else {
            None
        };

        let transport = if method == Method::Gsis {
            let s = op.grid.dx() / op.eps;
            let t = op.with_collision(DMatrix::identity(op.n, op.n) * s);
            let full = factor(&t, 0..op.n, 0.0, rho_row)?;
            let source_scale = sys.l_diag.iter().map(|l| s * (1.0 + l)).collect();
            Some(Transport { op: t, full, source_scale })
        } else {
            None
        };

        Ok(IterationOperator {
            op,
            config: config.clone(),
            partition,
            counters: Counters::default(),
            alpha,
            factored,
            sparse,
            transport,
            last_inner: 0,
        })
    }

    fn factored(&self, r: &Range<usize>) -> &Factored {
        self.factored.iter().find(|f| f.range == *r).expect("range factored at construction")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Inner iterations spent in the last outer iteration.
    pub fn last_inner(&self) -> usize {
        self.last_inner
    }

    /// One forward and one backward scan over the rows `r`.
    pub fn symmetric_sweep(&mut self, state: &mut FieldState, r: &Range<usize>) -> Result<(), SolverError> {
        let f = self.factored(r);
        scan(&self.op, f, &mut state.data, true, None)?;
        scan(&self.op, f, &mut state.data, false, None)?;
        self.counters.symmetric_sweeps += 1;
        Ok(())
    }

    pub fn bsgs_sweep(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        self.symmetric_sweep(state, &(0..self.op.n))
    }

    /// Same scan as [`bsgs_sweep`](Self::bsgs_sweep); the relaxation `α|A|` sits in the cached blocks.
    pub fn bssr_sweep(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        self.bsgs_sweep(state)
    }

    /// Solve the macro equations for the first block with the others frozen.
    pub fn solve_macro_block(&mut self, state: &mut FieldState) -> Result<usize, SolverError> {
        let r = self.partition.as_ref().map(|p| p.macro_block()).unwrap_or(0..self.op.n);
        self.counters.macro_solves += 1;
        if let Some(sp) = self.sparse.as_ref().filter(|s| s.range == r) {
            self.direct_correction(sp, state);
            return Ok(0);
        }
        let tol = self.config.inner.inner_tol;
        let f = self.factored(&r);
        let mut iters = 0;
        let mut res = range_norm(&self.op, &state.data, &r, None);
        while res > tol {
            if iters >= self.config.inner.max_iter || !res.is_finite() {
                return Err(SolverError::InnerStall { iters, residual: res, report: Box::default() });
            }
            scan(&self.op, f, &mut state.data, true, None)?;
            scan(&self.op, f, &mut state.data, false, None)?;
            iters += 1;
            res = range_norm(&self.op, &state.data, &r, None);
        }
        self.counters.inner_iterations += iters;
        Ok(iters)
    }

    fn direct_correction(&self, sp: &SparseSolve, state: &mut FieldState) {
        let (n, r) = (self.op.n, &sp.range);
        let nr = r.len();
        let m = self.op.n_cells();
        let mut buf = vec![0.0; nr];
        let mut rhs = faer::Col::<f64>::zeros(nr * m);
        for j in 0..m {
            rows_eval(&self.op, j, &state.data, r, None, &mut buf);
            for i in 0..nr {
                rhs[j * nr + i] = -buf[i];
            }
        }
        if let Some(p) = sp.pin {
            rhs[p] = 0.0;
        }
        let delta = sp.lu.solve(&rhs);
        for j in 0..m {
            for i in 0..nr {
                state.data[j * n + r.start + i] += delta[j * nr + i];
            }
        }
    }

    /// Macro solve, then a forward and a backward scan on each block `2..K` in turn.
    pub fn decomposition_iterate(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        let inner = self.solve_macro_block(state)?;
        let blocks = self.partition.as_ref().expect("partitioned method").blocks.clone();
        for b in &blocks[1..] {
            scan(&self.op, self.factored(b), &mut state.data, true, None)?;
            scan(&self.op, self.factored(b), &mut state.data, false, None)?;
        }
        self.counters.symmetric_sweeps += blocks.len() - 1;
        self.last_inner = inner;
        Ok(())
    }

    pub fn bsgs_mm_iterate(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        self.decomposition_iterate(state)
    }

    pub fn bsgs_ms_iterate(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        self.decomposition_iterate(state)
    }

    /// `N_b` full sweeps followed by one decomposition iteration.
    pub fn hybrid_iterate(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        for _ in 0..self.config.n_b {
            self.bsgs_sweep(state)?;
        }
        self.decomposition_iterate(state)
    }

    pub fn gsis_iterate(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        let macro_inner = self.solve_macro_block(state)?;
        let t = self.transport.as_ref().expect("transport system");
        let n = self.op.n;
        let mut src = state.data.clone();
        for (i, x) in src.iter_mut().enumerate() {
            *x *= t.source_scale[i % n];
        }
        let full = 0..n;
        let tol = self.config.inner.inner_tol;
        let mut iters = 0;
        let mut res = range_norm(&t.op, &state.data, &full, Some(&src));
        while res > tol {
            if iters >= self.config.inner.max_iter || !res.is_finite() {
                return Err(SolverError::InnerStall { iters, residual: res, report: Box::default() });
            }
            scan(&t.op, &t.full, &mut state.data, true, Some(&src))?;
            scan(&t.op, &t.full, &mut state.data, false, Some(&src))?;
            iters += 1;
            res = range_norm(&t.op, &state.data, &full, Some(&src));
        }
        self.counters.inner_iterations += iters;
        self.last_inner = macro_inner + iters;
        Ok(())
    }

    pub fn direct_solve(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        let sp = self.sparse.as_ref().expect("factored system");
        self.direct_correction(sp, state);
        self.counters.macro_solves += 1;
        Ok(())
    }

    /// One outer iteration of the configured method (without mass normalization).
    pub fn iterate(&mut self, state: &mut FieldState) -> Result<(), SolverError> {
        self.last_inner = 0;
        match self.config.method {
            Method::Bsgs | Method::Bssr => self.bsgs_sweep(state),
            Method::BsgsMm | Method::BsgsMs => self.decomposition_iterate(state),
            Method::HybridMm | Method::HybridMs => self.hybrid_iterate(state),
            Method::Gsis => self.gsis_iterate(state),
            Method::Direct => self.direct_solve(state),
        }
    }
}

pub fn solve(problem: &Problem, config: &SolverConfig) -> Result<(FieldState, IterationReport), SolverError> {
    solve_from(problem, config, problem.initial_state())
}

/// Outer iteration loop: iterate, renormalize, stop on `tol`, `N_s` or divergence.
pub fn solve_from(
    problem: &Problem,
    config: &SolverConfig,
    mut state: FieldState,
) -> Result<(FieldState, IterationReport), SolverError> {
    let start = std::time::Instant::now();
    let mut it = IterationOperator::new(problem, config)?;
    let mut report = IterationReport { initial_residual: it.op.residual(&state), ..Default::default() };
    let max_iter = if config.method == Method::Direct { 1 } else { config.max_iter };
    let mass_of = |s: &FieldState| boundary::total_mass(&problem.system, &problem.grid, s);
    if report.initial_residual < config.tol {
        report.converged = true;
    }
    while !report.converged && report.outer_iters < max_iter {
        if let Err(e) = it.iterate(&mut state) {
            return Err(match e {
                SolverError::InnerStall { iters, residual, .. } => {
                    report.counters = it.counters.clone();
                    report.wall_time = start.elapsed().as_secs_f64();
                    SolverError::InnerStall { iters, residual, report: Box::new(report) }
                }
                other => other,
            });
        }
        problem.normalize(&mut state);
        let r = it.op.residual(&state);
        report.outer_iters += 1;
        report.residual_history.push(r);
        report.inner_counts.push(it.last_inner());
        report.cumulative_seconds.push(start.elapsed().as_secs_f64());
        if let Some(c) = problem.mass {
            report.mass_defect.push((mass_of(&state) - c).abs());
        }
        if r < config.tol {
            report.converged = true;
        } else if !r.is_finite() || r > config.divergence_factor * report.initial_residual {
            report.diverged = true;
            break;
        }
    }
    report.counters = it.counters.clone();
    report.wall_time = start.elapsed().as_secs_f64();
    Ok((state, report))
}
