use discretization::{Closure, WallClosure};
use moment_basis::quadrature::{gauss_hermite, HalfRange};
use moment_basis::{Basis, MomentSystem};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::BoundaryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallSide {
    Left,
    Right,
    Bottom,
    Top,
}

impl WallSide {
    /// Spatial direction normal to the wall.
    pub fn direction(self) -> usize {
        match self {
            WallSide::Left | WallSide::Right => 0,
            WallSide::Bottom | WallSide::Top => 1,
        }
    }

    pub fn is_high(self) -> bool {
        matches!(self, WallSide::Right | WallSide::Top)
    }

    /// Sign of the inward normal along `direction()`.
    pub fn inward(self) -> f64 {
        if self.is_high() {
            -1.0
        } else {
            1.0
        }
    }
}

/// Fully diffusive wall with temperature and tangential velocity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallBC {
    pub wall: WallSide,
    #[serde(rename = "T_w")]
    pub t_w: f64,
    #[serde(rename = "U_w", default)]
    pub u_w: Vec<f64>,
}

impl WallBC {
    pub fn new(wall: WallSide, t_w: f64) -> Self {
        WallBC { wall, t_w, u_w: Vec::new() }
    }

    pub fn with_velocity(mut self, u_w: Vec<f64>) -> Self {
        self.u_w = u_w;
        self
    }
}

/// `u_odd = B u_even + g T_w + Σ_d g_u[d] U_w[d]` on one wall.
#[derive(Debug, Clone)]
pub struct BoundaryOperator {
    pub wall: WallBC,
    pub odd: Vec<usize>,
    pub even: Vec<usize>,
    pub b: DMatrix<f64>,
    pub g: DVector<f64>,
    /// One forcing vector per spatial direction; the wall-normal one is zero.
    pub g_u: Vec<DVector<f64>>,
}

/// Signed quadrature points for `∫_{σ v_a > 0} F(v) ω(v) dv`, exact for polynomial `F`
/// up to roughly degree `2 n` in each velocity component.
pub fn half_space_points(vdim: usize, axis: usize, sigma: f64, n: usize) -> Vec<(Vec<f64>, f64)> {
    let hr = HalfRange::new(n);
    let mut line = Vec::new();
    for (&x, &w) in hr.even_rule().nodes.iter().zip(&hr.even_rule().weights) {
        line.push((sigma * x, 0.5 * w));
        line.push((-sigma * x, 0.5 * w));
    }
    for (&x, &w) in hr.odd_rule().nodes.iter().zip(&hr.odd_rule().weights) {
        line.push((sigma * x, 0.5 * w));
        line.push((-sigma * x, -0.5 * w));
    }
    let gh = gauss_hermite(n);
    let mut pts: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
    for d in 0..vdim {
        let rule: Vec<(f64, f64)> = if d == axis {
            line.clone()
        } else {
            gh.nodes.iter().copied().zip(gh.weights.iter().copied()).collect()
        };
        pts = pts
            .into_iter()
            .flat_map(|(v, w)| {
                rule.iter().map(move |&(x, wx)| {
                    let mut v = v.clone();
                    v.push(x);
                    (v, w * wx)
                })
            })
            .collect();
    }
    pts
}

fn degree(system: &MomentSystem) -> usize {
    match system.basis {
        Basis::Hermite { n } => n,
        Basis::Burnett { l_max } => l_max,
    }
}

pub fn build_wall_operator(system: &MomentSystem, wall: &WallBC) -> Result<BoundaryOperator, BoundaryError> {
    let dir = wall.wall.direction();
    if dir >= system.dim_x() {
        return Err(BoundaryError::InvalidWall(format!("{:?} wall in {}D", wall.wall, system.dim_x())));
    }
    if wall.u_w.len() > system.dim_x() {
        return Err(BoundaryError::InvalidWall("wall velocity has too many components".into()));
    }
    if wall.u_w.get(dir).is_some_and(|u| *u != 0.0) {
        return Err(BoundaryError::InvalidWall("wall velocity must be tangential".into()));
    }
    let axis = system.velocity_axis(dir);
    let mask = system.odd_mask(axis);
    let odd: Vec<usize> = (0..system.n_vars()).filter(|&k| mask[k]).collect();
    let even: Vec<usize> = (0..system.n_vars()).filter(|&k| !mask[k]).collect();
    let norms = system.norm_sq();

    // S = (2/|φ_k|²) ∫_{incoming} φ_k φ_e ω, odd rows, even columns.
    let pts = half_space_points(system.velocity_dim(), axis, wall.wall.inward(), degree(system) + 2);
    let mut s = DMatrix::<f64>::zeros(odd.len(), even.len());
    for (v, w) in &pts {
        let phi = system.eval_basis(v);
        for (r, &k) in odd.iter().enumerate() {
            let wk = w * phi[k];
            if wk == 0.0 {
                continue;
            }
            for (c, &e) in even.iter().enumerate() {
                s[(r, c)] += wk * phi[e];
            }
        }
    }
    for (r, &k) in odd.iter().enumerate() {
        s.row_mut(r).scale_mut(2.0 / norms[k]);
    }
    // Round away quadrature noise in entries that vanish by symmetry.
    let tol = 1e-13 * s.amax().max(1.0);
    s.iter_mut().filter(|x| x.abs() < tol).for_each(|x| *x = 0.0);

    let restrict = |full: DVector<f64>| DVector::from_iterator(even.len(), even.iter().map(|&e| full[e]));
    let h1 = &s * restrict(system.density_coeffs());
    let ht = &s * restrict(system.temperature_coeffs());
    let vn = system.velocity_coeffs(axis);
    let n_row = odd
        .iter()
        .position(|&k| vn[k] != 0.0)
        .ok_or_else(|| BoundaryError::InvalidWall("normal velocity is not an odd moment".into()))?;
    let pivot = h1[n_row];
    if pivot.abs() < 1e-12 {
        return Err(BoundaryError::DegenerateWall(pivot));
    }
    let sn = s.row(n_row).clone_owned();
    let mut b = -&s + &h1 * sn / pivot;
    b.row_mut(n_row).fill(0.0);
    let eliminate = |h: DVector<f64>| {
        let mut out = &h - &h1 * (h[n_row] / pivot);
        out[n_row] = 0.0;
        out
    };
    let g = eliminate(ht);
    let g_u = (0..system.dim_x())
        .map(|d| {
            if d == dir {
                DVector::zeros(odd.len())
            } else {
                eliminate(&s * restrict(system.velocity_coeffs(system.velocity_axis(d))))
            }
        })
        .collect();
    Ok(BoundaryOperator { wall: wall.clone(), odd, even, b, g, g_u })
}

impl BoundaryOperator {
    pub fn n_vars(&self) -> usize {
        self.odd.len() + self.even.len()
    }

    /// Wall forcing `g T_w + Σ g_u U_w`.
    pub fn forcing(&self) -> DVector<f64> {
        let mut f = &self.g * self.wall.t_w;
        for (gu, u) in self.g_u.iter().zip(&self.wall.u_w) {
            f.axpy(*u, gu, 1.0);
        }
        f
    }

    /// Odd moments prescribed by the wall for the given even moments (full-length input).
    pub fn odd_moments(&self, u: &DVector<f64>) -> DVector<f64> {
        let ue = DVector::from_iterator(self.even.len(), self.even.iter().map(|&e| u[e]));
        &self.b * ue + self.forcing()
    }

    /// Interior state with its odd part replaced by the wall-prescribed values.
    pub fn boundary_state(&self, u: &DVector<f64>) -> DVector<f64> {
        let mut out = u.clone();
        for (r, v) in self.odd_moments(u).iter().enumerate() {
            out[self.odd[r]] = *v;
        }
        out
    }

    /// Affine ghost map: even moments mirror, odd ones reflect about the wall values.
    pub fn closure(&self) -> WallClosure {
        let n = self.n_vars();
        let mut g = DMatrix::zeros(n, n);
        for &e in &self.even {
            g[(e, e)] = 1.0;
        }
        let mut c = DVector::zeros(n);
        let f = self.forcing();
        for (r, &k) in self.odd.iter().enumerate() {
            g[(k, k)] = -1.0;
            for (col, &e) in self.even.iter().enumerate() {
                g[(k, e)] += 2.0 * self.b[(r, col)];
            }
            c[k] = 2.0 * f[r];
        }
        WallClosure { g, c }
    }

    pub fn ghost(&self, face: &DVector<f64>) -> DVector<f64> {
        let wc = self.closure();
        &wc.g * face + &wc.c
    }
}

/// Closure for a fully walled grid; every wall of the domain must be given once.
pub fn wall_closures(system: &MomentSystem, walls: &[WallBC]) -> Result<Closure, BoundaryError> {
    let dim = system.dim_x();
    let mut slots: Vec<[Option<WallClosure>; 2]> = vec![[None, None]; dim];
    for w in walls {
        let op = build_wall_operator(system, w)?;
        let slot = &mut slots[w.wall.direction()][w.wall.is_high() as usize];
        if slot.is_some() {
            return Err(BoundaryError::InvalidWall(format!("{:?} wall given twice", w.wall)));
        }
        *slot = Some(op.closure());
    }
    let mut out = Vec::with_capacity(dim);
    for (d, [lo, hi]) in slots.into_iter().enumerate() {
        match (lo, hi) {
            (Some(lo), Some(hi)) => out.push([lo, hi]),
            _ => return Err(BoundaryError::InvalidWall(format!("missing wall in direction {d}"))),
        }
    }
    Ok(Closure::Walls(out))
}
