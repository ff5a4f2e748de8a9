use nalgebra::DVector;

use crate::error::DiscError;
use crate::grid::Grid;
use crate::operator::{Closure, WallClosure};
use crate::state::FieldState;

/// Relative cell offsets and coefficients of a linear reconstruction.
pub type Weights = Vec<(isize, f64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Face value of cell `p` on one side: `ū_p ± (θ/2) σ_p`, where the slope `σ_p` is the
/// central difference inside and the one-sided difference in wall-adjacent cells.
pub fn cell_weights(m: usize, p: usize, periodic: bool, theta: f64, side: Side) -> Weights {
    let mut w = vec![(0, 1.0)];
    if theta == 0.0 || m < 2 {
        return w;
    }
    let slope: Weights = if periodic || (p >= 1 && p + 1 < m) {
        vec![(1, 0.5), (-1, -0.5)]
    } else if p == 0 {
        vec![(1, 1.0), (0, -1.0)]
    } else {
        vec![(0, 1.0), (-1, -1.0)]
    };
    let sgn = if side == Side::Right { 0.5 * theta } else { -0.5 * theta };
    for (o, c) in slope {
        match w.iter_mut().find(|(x, _)| *x == o) {
            Some((_, v)) => *v += sgn * c,
            None => w.push((o, sgn * c)),
        }
    }
    w
}

/// Upwind-side (`minus`) and downwind-side (`plus`) values at one face.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceValues {
    pub minus: DVector<f64>,
    pub plus: DVector<f64>,
}

fn eval(cells: &[DVector<f64>], p: usize, w: &Weights, periodic: bool) -> DVector<f64> {
    let m = cells.len() as isize;
    let mut v = DVector::zeros(cells[0].len());
    for &(o, c) in w {
        let q = if periodic { (p as isize + o).rem_euclid(m) } else { p as isize + o };
        v.axpy(c, &cells[q as usize], 1.0);
    }
    v
}

fn ghost(wc: Option<&WallClosure>, face: DVector<f64>) -> DVector<f64> {
    match wc {
        Some(w) => &w.g * face + &w.c,
        None => face,
    }
}

/// Face values along one line of cells. Walls give faces `0..=m` with ghost values
/// from the closures; periodic lines give faces `0..m`, face `f` being the left face of cell `f`.
pub fn reconstruct_line(
    cells: &[DVector<f64>],
    order: usize,
    periodic: bool,
    low: Option<&WallClosure>,
    high: Option<&WallClosure>,
) -> Vec<FaceValues> {
    let m = cells.len();
    let theta = if order == 2 { 1.0 } else { 0.0 };
    let right = |p: usize| eval(cells, p, &cell_weights(m, p, periodic, theta, Side::Right), periodic);
    let left = |p: usize| eval(cells, p, &cell_weights(m, p, periodic, theta, Side::Left), periodic);
    if periodic {
        return (0..m)
            .map(|f| FaceValues { minus: right((f + m - 1) % m), plus: left(f) })
            .collect();
    }
    let mut faces = Vec::with_capacity(m + 1);
    let l0 = left(0);
    faces.push(FaceValues { minus: ghost(low, l0.clone()), plus: l0 });
    for f in 1..m {
        faces.push(FaceValues { minus: right(f - 1), plus: left(f) });
    }
    let r = right(m - 1);
    faces.push(FaceValues { plus: ghost(high, r.clone()), minus: r });
    faces
}

/// Face values of a 1D state under the given closure.
pub fn reconstruct_faces(
    state: &FieldState,
    grid: &Grid,
    order: usize,
    closure: &Closure,
) -> Result<Vec<FaceValues>, DiscError> {
    if grid.dim() != 1 {
        return Err(DiscError::Dimension { expected: 1, got: grid.dim() });
    }
    if state.n_cells() != grid.n_cells() {
        return Err(DiscError::Dimension { expected: grid.n_cells(), got: state.n_cells() });
    }
    let cells: Vec<DVector<f64>> =
        (0..state.n_cells()).map(|j| DVector::from_column_slice(state.cell(j))).collect();
    Ok(reconstruct_line(&cells, order, grid.periodic, closure.wall(0, false), closure.wall(0, true)))
}
