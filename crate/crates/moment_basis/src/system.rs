use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::burnett;
use crate::error::BasisError;
use crate::hermite::hermite_values;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// 1D space, 1D velocity, `He_0..He_n`.
    Hermite { n: usize },
    /// 2D space, 3D velocity, Burnett polynomials up to degree `l_max`.
    Burnett { l_max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Hermite(usize),
    Burnett { l: usize, m: i32, n: usize },
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Hermite(n) => write!(f, "{n}"),
            Label::Burnett { l, m, n } => write!(f, "{l},{m},{n}"),
        }
    }
}

/// Diagonal entries of a Maxwell-molecule collision operator keyed by `(l, n)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CollisionTable {
    pub entries: Vec<(usize, usize, f64)>,
}

impl CollisionTable {
    pub const ANCHORS: [(usize, usize, f64); 5] = [
        (0, 0, 0.0),
        (0, 1, 0.0),
        (1, 0, 0.0),
        (1, 1, -2.0 / 3.0),
        (2, 0, -1.0),
    ];

    /// The five known anchors merged with extra entries. Extra entries may not contradict an anchor.
    pub fn with_anchors(extra: &[(usize, usize, f64)]) -> Result<Self, BasisError> {
        let mut map: BTreeMap<(usize, usize), f64> =
            Self::ANCHORS.iter().map(|&(l, n, v)| ((l, n), v)).collect();
        for &(l, n, v) in extra {
            match map.get(&(l, n)) {
                Some(&old) if (old - v).abs() > 1e-15 => {
                    return Err(BasisError::InvalidSpec(format!(
                        "collision entry ({l},{n}) = {v} contradicts anchor {old}"
                    )))
                }
                _ => {
                    map.insert((l, n), v);
                }
            }
        }
        Ok(CollisionTable { entries: map.into_iter().map(|((l, n), v)| (l, n, v)).collect() })
    }

    pub fn get(&self, l: usize, n: usize) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == l && e.1 == n).map(|e| e.2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Collision {
    Bgk,
    MaxwellTable(CollisionTable),
}

/// Macroscopic quantities of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Macro {
    pub rho: f64,
    pub velocity: Vec<f64>,
    pub temperature: f64,
    pub heat_flux: Vec<f64>,
}

/// Linear moment system `sum_i A_i du/dx_i = (1/eps) L u` with diagonal `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSystem {
    pub basis: Basis,
    pub collision: Collision,
    pub labels: Vec<Label>,
    /// One advection matrix per spatial direction.
    pub a: Vec<DMatrix<f64>>,
    pub l_diag: Vec<f64>,
}

impl MomentSystem {
    pub fn n_vars(&self) -> usize {
        self.labels.len()
    }

    pub fn dim_x(&self) -> usize {
        self.a.len()
    }

    pub fn velocity_dim(&self) -> usize {
        match self.basis {
            Basis::Hermite { .. } => 1,
            Basis::Burnett { .. } => 3,
        }
    }

    pub fn lmat(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(&self.l_diag))
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.n_vars()).filter(|&k| self.l_diag[k] == 0.0).collect()
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Velocity axis carried by spatial direction `dir` (x -> v_x, y -> v_y).
    pub fn velocity_axis(&self, dir: usize) -> usize {
        dir
    }

    /// All basis functions at the velocity point `v` (length `velocity_dim`).
    pub fn eval_basis(&self, v: &[f64]) -> Vec<f64> {
        match self.basis {
            Basis::Hermite { n } => hermite_values(n, v[0]),
            Basis::Burnett { l_max } => burnett::eval_basis(l_max, &self.labels, v),
        }
    }

    /// `int |phi_k|^2 omega dv` per basis function.
    pub fn norm_sq(&self) -> Vec<f64> {
        self.labels
            .iter()
            .map(|lab| match *lab {
                Label::Hermite(n) => (1..=n).map(|k| k as f64).product(),
                Label::Burnett { l, n, .. } => burnett::norm_sq(l, n),
            })
            .collect()
    }

    /// Whether each basis function is odd under `v_axis -> -v_axis`.
    pub fn odd_mask(&self, axis: usize) -> Vec<bool> {
        self.labels
            .iter()
            .map(|lab| match *lab {
                Label::Hermite(n) => axis == 0 && n % 2 == 1,
                Label::Burnett { l, m, .. } => burnett::is_odd(l, m, axis),
            })
            .collect()
    }

    /// Coefficients of the function `1`.
    pub fn density_coeffs(&self) -> DVector<f64> {
        let mut c = DVector::zeros(self.n_vars());
        match self.basis {
            Basis::Hermite { .. } => c[0] = 1.0,
            Basis::Burnett { .. } => c[0] = 2.0 * PI.sqrt(),
        }
        c
    }

    /// Coefficients of the function `v_axis`.
    pub fn velocity_coeffs(&self, axis: usize) -> DVector<f64> {
        let mut c = DVector::zeros(self.n_vars());
        match self.basis {
            Basis::Hermite { .. } => c[1] = 1.0,
            Basis::Burnett { .. } => {
                let m = burnett::axis_m(axis);
                let k = self.index_of(Label::Burnett { l: 1, m, n: 0 }).expect("l=1 present");
                c[k] = (4.0 * PI / 3.0).sqrt();
            }
        }
        c
    }

    /// Coefficients of `(|v|^2 - d)/2`, the temperature perturbation of a Maxwellian.
    pub fn temperature_coeffs(&self) -> DVector<f64> {
        let mut c = DVector::zeros(self.n_vars());
        match self.basis {
            Basis::Hermite { .. } => c[2] = 0.5,
            Basis::Burnett { .. } => c[1] = -2.0 * PI.sqrt(),
        }
        c
    }

    /// Row carrying the density and the factor with `rho = u[row] / scale`.
    pub fn density_channel(&self) -> (usize, f64) {
        match self.basis {
            Basis::Hermite { .. } => (0, 1.0),
            Basis::Burnett { .. } => (0, 2.0 * PI.sqrt()),
        }
    }

    pub fn extract_macro(&self, u: &[f64]) -> Result<Macro, BasisError> {
        if u.len() != self.n_vars() {
            return Err(BasisError::Dimension { expected: self.n_vars(), got: u.len() });
        }
        Ok(match self.basis {
            Basis::Hermite { n } => Macro {
                rho: u[0],
                velocity: vec![u[1]],
                temperature: 2.0 * u[2],
                // q = (1/2) int He_3 f dv
                heat_flux: vec![if n >= 3 { 3.0 * u[3] } else { 0.0 }],
            },
            Basis::Burnett { .. } => {
                let get = |l: usize, m: i32, n: usize| {
                    self.index_of(Label::Burnett { l, m, n }).map(|k| u[k]).unwrap_or(0.0)
                };
                let s = 2.0 * PI.sqrt();
                let cu = 0.5 * (3.0 / PI).sqrt();
                let cq = -1.25 * (3.0 / PI).sqrt();
                let axes = [0usize, 1, 2];
                Macro {
                    rho: get(0, 0, 0) / s,
                    velocity: axes.iter().map(|&a| cu * get(1, burnett::axis_m(a), 0)).collect(),
                    temperature: -get(0, 0, 1) / s,
                    heat_flux: axes.iter().map(|&a| cq * get(1, burnett::axis_m(a), 1)).collect(),
                }
            }
        })
    }

    pub fn to_json(&self) -> Result<String, BasisError> {
        Ok(serde_json::to_string_pretty(&SystemDump::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self, BasisError> {
        let d: SystemDump = serde_json::from_str(s)?;
        d.try_into()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SystemDump {
    basis: Basis,
    collision: Collision,
    n_vars: usize,
    /// Dense row-major advection matrices.
    a: Vec<Vec<f64>>,
    l_diag: Vec<f64>,
    index_map: Vec<Label>,
}

impl From<&MomentSystem> for SystemDump {
    fn from(s: &MomentSystem) -> Self {
        SystemDump {
            basis: s.basis.clone(),
            collision: s.collision.clone(),
            n_vars: s.n_vars(),
            a: s.a.iter().map(|m| m.transpose().as_slice().to_vec()).collect(),
            l_diag: s.l_diag.clone(),
            index_map: s.labels.clone(),
        }
    }
}

impl TryFrom<SystemDump> for MomentSystem {
    type Error = BasisError;

    fn try_from(d: SystemDump) -> Result<Self, BasisError> {
        let n = d.n_vars;
        for v in [d.index_map.len(), d.l_diag.len()] {
            if v != n {
                return Err(BasisError::Dimension { expected: n, got: v });
            }
        }
        let mut a = Vec::new();
        for m in &d.a {
            if m.len() != n * n {
                return Err(BasisError::Dimension { expected: n * n, got: m.len() });
            }
            a.push(DMatrix::from_row_slice(n, n, m));
        }
        Ok(MomentSystem { basis: d.basis, collision: d.collision, labels: d.index_map, a, l_diag: d.l_diag })
    }
}
