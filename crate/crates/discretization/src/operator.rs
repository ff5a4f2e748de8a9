use std::collections::HashMap;

use moment_basis::MomentSystem;
use nalgebra::{DMatrix, DVector, DVectorView, DVectorViewMut};

use crate::error::DiscError;
use crate::flux::{flux_split, FluxSplit};
use crate::grid::Grid;
use crate::reconstruct::{cell_weights, Side, Weights};
use crate::state::FieldState;

/// Affine ghost-cell map `ghost = g · interior_face + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct WallClosure {
    pub g: DMatrix<f64>,
    pub c: DVector<f64>,
}

/// Boundary treatment for all directions of a grid.
#[derive(Debug, Clone)]
pub enum Closure {
    Periodic,
    /// `[low, high]` walls for each direction.
    Walls(Vec<[WallClosure; 2]>),
}

impl Closure {
    pub fn wall(&self, dir: usize, high: bool) -> Option<&WallClosure> {
        match self {
            Closure::Periodic => None,
            Closure::Walls(w) => Some(&w[dir][high as usize]),
        }
    }
}

/// One-direction stencil row at a given position along the direction.
#[derive(Debug, Clone, PartialEq)]
pub struct DirRow {
    pub diag: DMatrix<f64>,
    pub offs: Vec<(isize, DMatrix<f64>)>,
    pub c: DVector<f64>,
}

/// Row of the assembled operator for one cell.
#[derive(Debug, Clone)]
pub struct CellRow {
    pub diag: usize,
    pub nbrs: Vec<(usize, usize)>,
    pub rhs: Option<usize>,
}

/// Block-sparse upwind operator. Row `j` evaluates
/// `D_j u_j + Σ K_{jk} u_k + c_j` with `D_j` including `−(Δx/ε) L`.
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub grid: Grid,
    pub order: usize,
    pub eps: f64,
    pub n: usize,
    pub splits: Vec<FluxSplit>,
    pub scales: Vec<f64>,
    pub collision: DMatrix<f64>,
    /// `Σ_d scale_d |A_d|`, the BSSR relaxation block.
    pub relax: DMatrix<f64>,
    pub flux_diag: Vec<DMatrix<f64>>,
    pub diag_pool: Vec<DMatrix<f64>>,
    pub blocks: Vec<DMatrix<f64>>,
    pub consts: Vec<DVector<f64>>,
    pub rows: Vec<CellRow>,
}

pub fn assemble(
    system: &MomentSystem,
    grid: &Grid,
    closure: &Closure,
    order: usize,
    eps: f64,
) -> Result<DiscreteOperator, DiscError> {
    let theta = if order == 2 { 1.0 } else { 0.0 };
    assemble_with_slope_factor(system, grid, closure, order, eps, theta)
}

/// Like [`assemble`], with reconstruction slopes multiplied by `theta`.
/// `theta = 0` gives the first-order scheme whatever `order` says.
pub fn assemble_with_slope_factor(
    system: &MomentSystem,
    grid: &Grid,
    closure: &Closure,
    order: usize,
    eps: f64,
    theta: f64,
) -> Result<DiscreteOperator, DiscError> {
    if !(order == 1 || order == 2) {
        return Err(DiscError::InvalidGrid(format!("order {order} not in {{1,2}}")));
    }
    if !(eps > 0.0) {
        return Err(DiscError::InvalidGrid(format!("eps must be positive, got {eps}")));
    }
    if system.dim_x() != grid.dim() {
        return Err(DiscError::Dimension { expected: system.dim_x(), got: grid.dim() });
    }
    if order == 2 && grid.cells.iter().any(|&m| m < 4) {
        return Err(DiscError::InvalidGrid("second order needs at least 4 cells per direction".into()));
    }
    let n = system.n_vars();
    match closure {
        Closure::Periodic if !grid.periodic => {
            return Err(DiscError::InvalidGrid("periodic closure on a walled grid".into()))
        }
        Closure::Walls(_) if grid.periodic => {
            return Err(DiscError::InvalidGrid("wall closure on a periodic grid".into()))
        }
        Closure::Walls(w) => {
            if w.len() != grid.dim() {
                return Err(DiscError::Dimension { expected: grid.dim(), got: w.len() });
            }
            for wc in w.iter().flatten() {
                if wc.g.nrows() != n || wc.g.ncols() != n || wc.c.len() != n {
                    return Err(DiscError::Dimension { expected: n, got: wc.c.len() });
                }
            }
        }
        _ => {}
    }

    let dx = grid.dx();
    let splits = system.a.iter().map(flux_split).collect::<Result<Vec<_>, _>>()?;
    let scales: Vec<f64> = grid.h.iter().map(|h| dx / h).collect();
    let collision = -system.lmat() * (dx / eps);
    let mut relax = DMatrix::zeros(n, n);
    for (s, sc) in splits.iter().zip(&scales) {
        relax += &s.abs * *sc;
    }

    // Distinct rows per direction, and the class of every position.
    let mut dir_rows: Vec<Vec<DirRow>> = Vec::new();
    let mut dir_class: Vec<Vec<usize>> = Vec::new();
    for d in 0..grid.dim() {
        let m = grid.cells[d];
        let (lo, hi) = (closure.wall(d, false), closure.wall(d, true));
        let mut classes: Vec<DirRow> = Vec::new();
        let mut cls = Vec::with_capacity(m);
        for p in 0..m {
            let mut row = dir_row(&splits[d], m, p, grid.periodic, theta, lo, hi);
            row.diag *= scales[d];
            row.c *= scales[d];
            for (_, b) in &mut row.offs {
                *b *= scales[d];
            }
            let id = classes.iter().position(|c| *c == row).unwrap_or_else(|| {
                classes.push(row);
                classes.len() - 1
            });
            cls.push(id);
        }
        dir_rows.push(classes);
        dir_class.push(cls);
    }

    let mut blocks = Vec::new();
    let mut block_id: Vec<Vec<Vec<usize>>> = Vec::new();
    for rows in &dir_rows {
        block_id.push(
            rows.iter()
                .map(|r| {
                    r.offs
                        .iter()
                        .map(|(_, b)| {
                            blocks.push(b.clone());
                            blocks.len() - 1
                        })
                        .collect()
                })
                .collect(),
        );
    }

    let mut flux_diag = Vec::new();
    let mut consts = Vec::new();
    let mut combos: HashMap<Vec<usize>, (usize, Option<usize>)> = HashMap::new();
    let mut rows = Vec::with_capacity(grid.n_cells());
    for j in 0..grid.n_cells() {
        let pos = grid.position(j);
        let key: Vec<usize> = (0..grid.dim()).map(|d| dir_class[d][pos[d]]).collect();
        let (diag, rhs) = *combos.entry(key.clone()).or_insert_with(|| {
            let mut dg = DMatrix::zeros(n, n);
            let mut c = DVector::zeros(n);
            for d in 0..grid.dim() {
                let row = &dir_rows[d][key[d]];
                dg += &row.diag;
                c += &row.c;
                for (off, b) in &row.offs {
                    if wrap(pos[d], *off, grid.cells[d]) == pos[d] {
                        dg += b;
                    }
                }
            }
            flux_diag.push(dg);
            let rhs = if c.iter().any(|x| *x != 0.0) {
                consts.push(c);
                Some(consts.len() - 1)
            } else {
                None
            };
            (flux_diag.len() - 1, rhs)
        });
        let mut nbrs = Vec::new();
        for d in 0..grid.dim() {
            let row = &dir_rows[d][key[d]];
            for (k, (off, _)) in row.offs.iter().enumerate() {
                let q = wrap(pos[d], *off, grid.cells[d]);
                if q != pos[d] {
                    let mut npos = pos.clone();
                    npos[d] = q;
                    nbrs.push((grid.index(&npos), block_id[d][key[d]][k]));
                }
            }
        }
        rows.push(CellRow { diag, nbrs, rhs });
    }
    let diag_pool = flux_diag.iter().map(|f| f + &collision).collect();

    Ok(DiscreteOperator {
        grid: grid.clone(),
        order,
        eps,
        n,
        splits,
        scales,
        collision,
        relax,
        flux_diag,
        diag_pool,
        blocks,
        consts,
        rows,
    })
}

fn wrap(p: usize, off: isize, m: usize) -> usize {
    (p as isize + off).rem_euclid(m as isize) as usize
}

/// Face value as reconstruction weights, optionally passed through a ghost map.
struct Face<'a> {
    w: Weights,
    ghost: Option<&'a WallClosure>,
}

fn dir_row(
    split: &FluxSplit,
    m: usize,
    p: usize,
    periodic: bool,
    theta: f64,
    lo: Option<&WallClosure>,
    hi: Option<&WallClosure>,
) -> DirRow {
    let shift = |w: Weights, s: isize| w.into_iter().map(|(o, c)| (o + s, c)).collect::<Weights>();
    let own = |side| cell_weights(m, p, periodic, theta, side);
    let minus_right = Face { w: own(Side::Right), ghost: None };
    let plus_left = Face { w: own(Side::Left), ghost: None };
    let plus_right = if periodic || p + 1 < m {
        Face { w: shift(cell_weights(m, (p + 1) % m, periodic, theta, Side::Left), 1), ghost: None }
    } else {
        Face { w: own(Side::Right), ghost: hi }
    };
    let minus_left = if periodic || p >= 1 {
        Face { w: shift(cell_weights(m, (p + m - 1) % m, periodic, theta, Side::Right), -1), ghost: None }
    } else {
        Face { w: own(Side::Left), ghost: lo }
    };

    let n = split.plus.nrows();
    let mut acc: Vec<(isize, DMatrix<f64>)> = Vec::new();
    let mut c = DVector::zeros(n);
    let mut add = |mat: &DMatrix<f64>, face: &Face, sign: f64| {
        let (lin, cst) = match face.ghost {
            Some(wc) => (mat * &wc.g, Some(mat * &wc.c)),
            None => (mat.clone(), None),
        };
        if let Some(v) = cst {
            c.axpy(sign, &v, 1.0);
        }
        for &(o, w) in &face.w {
            let b = &lin * (sign * w);
            match acc.iter_mut().find(|(x, _)| *x == o) {
                Some((_, m)) => *m += b,
                None => acc.push((o, b)),
            }
        }
    };
    add(&split.plus, &minus_right, 1.0);
    add(&split.plus, &minus_left, -1.0);
    add(&split.minus, &plus_right, 1.0);
    add(&split.minus, &plus_left, -1.0);

    acc.sort_by_key(|(o, _)| *o);
    let mut diag = DMatrix::zeros(n, n);
    let mut offs = Vec::new();
    for (o, b) in acc {
        if o == 0 {
            diag = b;
        } else if b.iter().any(|x| *x != 0.0) {
            offs.push((o, b));
        }
    }
    DirRow { diag, offs, c }
}

pub(crate) fn gemv_acc(out: &mut [f64], m: &DMatrix<f64>, x: &[f64], alpha: f64) {
    let mut o = DVectorViewMut::from_slice(out, m.nrows());
    o.gemv(alpha, m, &DVectorView::from_slice(x, m.ncols()), 1.0);
}

impl DiscreteOperator {
    pub fn n_cells(&self) -> usize {
        self.rows.len()
    }

    pub fn diag(&self, j: usize) -> &DMatrix<f64> {
        &self.diag_pool[self.rows[j].diag]
    }

    /// Same operator with the collision block replaced by `collision`.
    pub fn with_collision(&self, collision: DMatrix<f64>) -> Self {
        let mut op = self.clone();
        op.diag_pool = op.flux_diag.iter().map(|f| f + &collision).collect();
        op.collision = collision;
        op
    }

    /// Same operator with the boundary constants removed.
    pub fn homogeneous(&self) -> Self {
        let mut op = self.clone();
        for r in &mut op.rows {
            r.rhs = None;
        }
        op
    }

    /// `out = Σ_k K_{jk} u_k + c_j` (everything except the diagonal block).
    pub fn off_diag_row(&self, j: usize, u: &[f64], out: &mut [f64]) {
        let n = self.n;
        let row = &self.rows[j];
        match row.rhs {
            Some(c) => out.copy_from_slice(self.consts[c].as_slice()),
            None => out.fill(0.0),
        }
        for &(k, b) in &row.nbrs {
            gemv_acc(out, &self.blocks[b], &u[k * n..(k + 1) * n], 1.0);
        }
    }

    pub fn row(&self, j: usize, u: &[f64], out: &mut [f64]) {
        let n = self.n;
        self.off_diag_row(j, u, out);
        gemv_acc(out, self.diag(j), &u[j * n..(j + 1) * n], 1.0);
    }

    /// Stencil evaluation of every row, including boundary constants.
    pub fn apply(&self, state: &FieldState) -> FieldState {
        let mut out = FieldState::zeros(self.n_cells(), self.n, state.eps);
        for j in 0..self.n_cells() {
            self.row(j, &state.data, out.cell_mut(j));
        }
        out
    }

    pub fn residual(&self, state: &FieldState) -> f64 {
        let mut buf = vec![0.0; self.n];
        let mut s = 0.0;
        for j in 0..self.n_cells() {
            self.row(j, &state.data, &mut buf);
            s += buf.iter().map(|x| x * x).sum::<f64>();
        }
        (s / self.n_cells() as f64).sqrt()
    }
}
