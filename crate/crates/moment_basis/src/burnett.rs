//! Burnett polynomials `phi_lmn(v) = |v|^l Y_lm(v/|v|) L_n^{(l+1/2)}(|v|^2/2)` with real,
//! orthonormal spherical harmonics without the Condon-Shortley phase:
//! `m > 0` carries `cos(m phi)`, `m < 0` carries `sin(|m| phi)`, so `m = 1 <-> v_x`,
//! `m = -1 <-> v_y`, `m = 0 <-> v_z`.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::BasisError;
use crate::quadrature::{gauss_laguerre, gauss_legendre};
use crate::system::{Basis, Collision, Label, MomentSystem};

#[derive(Debug, Clone, PartialEq)]
pub struct BurnettSystemSpec {
    pub l_trunc: usize,
    pub collision: Collision,
}

/// Largest Laguerre degree kept for harmonic degree `l`.
pub fn n_max(l_trunc: usize, l: usize) -> usize {
    (l_trunc - l).div_ceil(2)
}

pub fn moment_count(l_trunc: usize) -> usize {
    (0..=l_trunc).map(|l| (2 * l + 1) * (n_max(l_trunc, l) + 1)).sum()
}

/// Smallest `k >= 1` with `(l, n)` in `U_k = {l <= k, n <= ceil((k - l)/2)}`.
pub fn level(l: usize, n: usize) -> usize {
    (l + 2 * n).saturating_sub(1).max(l).max(1)
}

/// Labels ordered by level, then lexicographically in `(l, m, n)`.
pub fn labels(l_trunc: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for l in 0..=l_trunc {
        for m in -(l as i32)..=(l as i32) {
            for n in 0..=n_max(l_trunc, l) {
                out.push((level(l, n), l, m, n));
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, l, m, n)| Label::Burnett { l, m, n }).collect()
}

pub fn axis_m(axis: usize) -> i32 {
    match axis {
        0 => 1,
        1 => -1,
        _ => 0,
    }
}

pub fn is_odd(l: usize, m: i32, axis: usize) -> bool {
    let am = m.unsigned_abs() as usize;
    match axis {
        0 => {
            if m >= 0 {
                am % 2 == 1
            } else {
                am.is_multiple_of(2)
            }
        }
        1 => m < 0,
        _ => (l + am) % 2 == 1,
    }
}

fn half_gamma(k: usize) -> f64 {
    // Gamma(k + 1/2)
    (0..k).fold(PI.sqrt(), |acc, j| acc * (j as f64 + 0.5))
}

pub fn norm_sq(l: usize, n: usize) -> f64 {
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    2f64.powf(l as f64 + 0.5) * half_gamma(n + l + 1) / fact / (2.0 * PI).powf(1.5)
}

fn ylm_norm(l: usize, m: usize) -> f64 {
    let ratio: f64 = ((l - m + 1)..=(l + m)).map(|k| 1.0 / k as f64).product();
    let base = ((2 * l + 1) as f64 / (4.0 * PI) * ratio).sqrt();
    if m == 0 {
        base
    } else {
        std::f64::consts::SQRT_2 * base
    }
}

/// Solid harmonics `|v|^l Y_lm(v/|v|)`, indexed `[l][m + l]`.
pub fn solid_harmonics(l_max: usize, v: &[f64]) -> Vec<Vec<f64>> {
    let (x, y, z) = (v[0], v[1], v[2]);
    let r2 = x * x + y * y + z * z;
    let mut c = vec![1.0; l_max + 1];
    let mut s = vec![0.0; l_max + 1];
    for m in 0..l_max {
        c[m + 1] = c[m] * x - s[m] * y;
        s[m + 1] = s[m] * x + c[m] * y;
    }
    let mut out: Vec<Vec<f64>> = (0..=l_max).map(|l| vec![0.0; 2 * l + 1]).collect();
    let mut p = vec![0.0; l_max + 1];
    for m in 0..=l_max {
        // p[l] = |v|^{l-m} d^m P_l / dt^m at t = z/|v|
        p[m] = (1..=m).fold(1.0, |acc, k| acc * (2 * k - 1) as f64);
        if m < l_max {
            p[m + 1] = (2 * m + 1) as f64 * z * p[m];
        }
        for l in (m + 2)..=l_max {
            p[l] = ((2 * l - 1) as f64 * z * p[l - 1] - (l + m - 1) as f64 * r2 * p[l - 2])
                / (l - m) as f64;
        }
        for l in m..=l_max {
            let nrm = ylm_norm(l, m) * p[l];
            if m == 0 {
                out[l][l] = nrm;
            } else {
                out[l][l + m] = nrm * c[m];
                out[l][l - m] = nrm * s[m];
            }
        }
    }
    out
}

/// Generalized Laguerre polynomials `L_0..L_n` with parameter `a` at `s`.
pub fn laguerre_values(n: usize, a: f64, s: f64) -> Vec<f64> {
    let mut out = vec![1.0];
    if n >= 1 {
        out.push(1.0 + a - s);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - s) * out[k] - (kf + a) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

pub fn eval_basis(l_max: usize, labels: &[Label], v: &[f64]) -> Vec<f64> {
    let sh = solid_harmonics(l_max, v);
    let s = 0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    let lag: Vec<Vec<f64>> = (0..=l_max)
        .map(|l| laguerre_values(n_max(l_max, l), l as f64 + 0.5, s))
        .collect();
    labels
        .iter()
        .map(|lab| match *lab {
            Label::Burnett { l, m, n } => sh[l][(m + l as i32) as usize] * lag[l][n],
            Label::Hermite(_) => unreachable!("Hermite label in Burnett basis"),
        })
        .collect()
}

/// `A_i[a][b] = int v_i phi_a phi_b omega / |phi_a|^2` for `i = x, y`, separating
/// angular integrals (Gauss-Legendre x trapezoid) from radial ones (Gauss-Laguerre).
pub fn advection_matrices(l_max: usize, labels: &[Label]) -> Vec<DMatrix<f64>> {
    let nv = labels.len();
    let nt = l_max + 3;
    let nphi = 2 * l_max + 6;
    let leg = gauss_legendre(nt);
    // angular integrals int n_i Y_a Y_b dOmega for the (l, m) pairs
    let nlm = (l_max + 1) * (l_max + 1);
    let lm_index = |l: usize, m: i32| l * l + (m + l as i32) as usize;
    let mut ang = [DMatrix::<f64>::zeros(nlm, nlm), DMatrix::<f64>::zeros(nlm, nlm)];
    let mut ys = vec![0.0; nlm];
    for (t, wt) in leg.nodes.iter().zip(&leg.weights) {
        let st = (1.0 - t * t).sqrt();
        for k in 0..nphi {
            let ph = 2.0 * PI * k as f64 / nphi as f64;
            let w = wt * 2.0 * PI / nphi as f64;
            let nvec = [st * ph.cos(), st * ph.sin(), *t];
            let sh = solid_harmonics(l_max, &nvec);
            for l in 0..=l_max {
                for m in -(l as i32)..=(l as i32) {
                    ys[lm_index(l, m)] = sh[l][(m + l as i32) as usize];
                }
            }
            for (i, a) in ang.iter_mut().enumerate() {
                let f = w * nvec[i];
                for p in 0..nlm {
                    let fp = f * ys[p];
                    for q in 0..nlm {
                        a[(p, q)] += fp * ys[q];
                    }
                }
            }
        }
    }
    // radial integrals with s = r^2/2:
    // int r^{3+la+lb} La Lb e^{-r^2/2} dr = 2^{1+(la+lb)/2} int s^{1/2} s^{(1+la+lb)/2} La Lb e^{-s} ds
    let lag = gauss_laguerre(2 * l_max + 8, 0.5);
    let lag_tab: Vec<Vec<Vec<f64>>> = lag
        .nodes
        .iter()
        .map(|&s| (0..=l_max).map(|l| laguerre_values(n_max(l_max, l), l as f64 + 0.5, s)).collect())
        .collect();
    let radial = |la: usize, na: usize, lb: usize, nb: usize| -> f64 {
        let p = ((1 + la + lb) / 2) as i32;
        let sum: f64 = lag
            .nodes
            .iter()
            .zip(&lag.weights)
            .enumerate()
            .map(|(q, (&s, &w))| w * s.powi(p) * lag_tab[q][la][na] * lag_tab[q][lb][nb])
            .sum();
        sum * 2f64.powf(1.0 + (la + lb) as f64 / 2.0) / (2.0 * PI).powf(1.5)
    };
    let mut out = vec![DMatrix::zeros(nv, nv), DMatrix::zeros(nv, nv)];
    for (ia, la) in labels.iter().enumerate() {
        let Label::Burnett { l: l1, m: m1, n: n1 } = *la else { unreachable!() };
        let nrm = norm_sq(l1, n1);
        for (ib, lb) in labels.iter().enumerate() {
            let Label::Burnett { l: l2, m: m2, n: n2 } = *lb else { unreachable!() };
            if l1.abs_diff(l2) != 1 {
                continue;
            }
            let r = radial(l1, n1, l2, n2);
            for i in 0..2 {
                // v_i phi_a phi_b must be even under every axis reflection
                let allowed = (0..3).all(|ax| is_odd(l1, m1, ax) ^ is_odd(l2, m2, ax) == (ax == i));
                let g = ang[i][(lm_index(l1, m1), lm_index(l2, m2))];
                if allowed && g.abs() > 1e-12 {
                    out[i][(ia, ib)] = g * r / nrm;
                }
            }
        }
    }
    out
}

pub fn build_burnett_system(spec: BurnettSystemSpec) -> Result<MomentSystem, BasisError> {
    let lt = spec.l_trunc;
    if lt < 1 {
        return Err(BasisError::InvalidSpec("Burnett truncation needs L >= 1".into()));
    }
    let labels = labels(lt);
    let mut l_diag = Vec::with_capacity(labels.len());
    for lab in &labels {
        let Label::Burnett { l, n, .. } = *lab else { unreachable!() };
        let conserved = level(l, n) == 1;
        let val = match &spec.collision {
            Collision::Bgk => {
                if conserved {
                    0.0
                } else {
                    -1.0
                }
            }
            Collision::MaxwellTable(t) => t.get(l, n).ok_or(BasisError::IncompleteTable { l, n })?,
        };
        l_diag.push(val);
    }
    let a = advection_matrices(lt, &labels);
    Ok(MomentSystem { basis: Basis::Burnett { l_max: lt }, collision: spec.collision, labels, a, l_diag })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (l, c) in [(1, 5), (2, 13), (3, 26), (5, 71), (10, 341)] {
            assert_eq!(moment_count(l), c);
            assert_eq!(labels(l).len(), c);
        }
    }

    #[test]
    fn conserved_first() {
        let labs = labels(4);
        let first: Vec<_> = labs[..5].to_vec();
        assert_eq!(
            first,
            vec![
                Label::Burnett { l: 0, m: 0, n: 0 },
                Label::Burnett { l: 0, m: 0, n: 1 },
                Label::Burnett { l: 1, m: -1, n: 0 },
                Label::Burnett { l: 1, m: 0, n: 0 },
                Label::Burnett { l: 1, m: 1, n: 0 },
            ]
        );
    }

    #[test]
    fn low_harmonics() {
        let v = [0.3, -0.7, 1.1];
        let sh = solid_harmonics(2, &v);
        let c1 = (3.0 / (4.0 * PI)).sqrt();
        assert!((sh[0][0] - 0.5 / PI.sqrt()).abs() < 1e-15);
        assert!((sh[1][2] - c1 * v[0]).abs() < 1e-15);
        assert!((sh[1][0] - c1 * v[1]).abs() < 1e-15);
        assert!((sh[1][1] - c1 * v[2]).abs() < 1e-15);
        // Y_22 ~ (x^2 - y^2), Y_2,-2 ~ 2xy
        let c2 = (15.0 / (16.0 * PI)).sqrt();
        assert!((sh[2][4] - c2 * (v[0] * v[0] - v[1] * v[1])).abs() < 1e-14);
        assert!((sh[2][0] - c2 * 2.0 * v[0] * v[1]).abs() < 1e-14);
    }

    #[test]
    fn maxwell_table_missing_entry() {
        let t = crate::system::CollisionTable::with_anchors(&[]).unwrap();
        let e = build_burnett_system(BurnettSystemSpec { l_trunc: 3, collision: Collision::MaxwellTable(t) });
        assert!(matches!(e, Err(BasisError::IncompleteTable { .. })));
    }
}
