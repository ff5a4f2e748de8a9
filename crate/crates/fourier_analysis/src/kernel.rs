//! Limit analyses on the collision kernel `span{1, v, v^2 - 1}`: as `ε → 0` the error
//! modes of BSGS and BSSR live in the kernel and their amplification factors `λ0`
//! solve sextic equations in the Φ-moments of the half-range velocity operators.

use std::f64::consts::PI;

use moment_basis::quadrature::half_moment;
use nalgebra::{DMatrix, DVector};

use crate::error::{FourierError, Result};
use crate::linalg::{cis, complexify, null_vector, pencil_roots, C64};
use crate::spectrum::SymbolSpectrum;

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 2.0 * PI {
        Ok(())
    } else {
        Err(FourierError::InvalidParameter(format!("phase η = {eta} outside (0, 2π)")))
    }
}

/// `∫ v Φ_a Φ_b ω` over the whole line and over each half line, `Φ = (1, v, v^2 - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelOperators {
    pub v: DMatrix<f64>,
    pub plus: DMatrix<f64>,
    pub minus: DMatrix<f64>,
    pub abs: DMatrix<f64>,
}

pub fn kernel_operators() -> KernelOperators {
    let phi: [&[f64]; 3] = [&[1.0], &[0.0, 1.0], &[-1.0, 0.0, 1.0]];
    let mut plus = DMatrix::zeros(3, 3);
    let mut minus = DMatrix::zeros(3, 3);
    for a in 0..3 {
        for b in 0..3 {
            let (mut p, mut m) = (0.0, 0.0);
            for (i, ca) in phi[a].iter().enumerate() {
                for (j, cb) in phi[b].iter().enumerate() {
                    let k = (i + j + 1) as u32;
                    let h = ca * cb * half_moment(k);
                    p += h;
                    m += if k % 2 == 1 { h } else { -h };
                }
            }
            plus[(a, b)] = p;
            // ∫_{v<0} v g = -∫_{v>0} v g(-v)
            minus[(a, b)] = -m;
        }
    }
    KernelOperators { v: &plus + &minus, abs: &plus - &minus, plus, minus }
}

/// `1 / (5 - 4 cos η)`, the dominant BSGS amplification factor as `ε → 0`.
pub fn bsgs_lambda0(eta: f64) -> f64 {
    1.0 / (5.0 - 4.0 * eta.cos())
}

/// Modulus of the complex pair of sextic roots.
pub fn pair_modulus(eta: f64) -> f64 {
    let k = 16.0 - 5.0 * PI;
    let c = 1.0 - eta.cos();
    k / (k * k + 128.0 * (16.0 + 15.0 * PI) * c + 256.0 * k * c * c).sqrt()
}

/// First-order correction `λ = λ0 + ε λ1 + O(ε²)`.
pub fn bsgs_lambda1(eta: f64, dx: f64) -> f64 {
    let d = 5.0 - 4.0 * eta.cos();
    -36.0 * (2.0 * PI).sqrt() * (1.0 - eta.cos()) / (5.0 * dx * d * d)
}

/// Small-`Δx` form of `λ1` at the lowest mode `η = Δx`.
pub fn lambda1_asymptote(dx: f64) -> f64 {
    -18.0 / 5.0 * (2.0 * PI).sqrt() * dx
}

/// The 6×6 moment matrix of the limit BSGS symbol equation at trial root `λ0`.
pub fn build_q(eta: f64, lambda0: C64) -> DMatrix<C64> {
    let (em, ep) = (cis(-eta), cis(eta));
    let a = C64::new(2.0, 0.0) - em;
    let b = C64::new(2.0, 0.0) - ep;
    let s = (PI / 2.0).sqrt();
    let t = (2.0 * PI).sqrt();
    let l = lambda0;
    #[rustfmt::skip]
    let rows = [
        [l * a, -l * s * em, l * a, -ep, ep * s, -ep],
        [-l * s * em, l * a * 2.0, -l * t * em, ep * s, -ep * 2.0, ep * t],
        [l * a, -l * t * em, l * a * 5.0, -ep, ep * t, -ep * 5.0],
        [-l * em, -l * s * em, -l * em, l * b, l * s * ep, l * b],
        [-l * s * em, -l * em * 2.0, -l * t * em, l * s * ep, l * b * 2.0, l * t * ep],
        [-l * em, -l * t * em, -l * em * 5.0, l * b, l * t * ep, l * b * 5.0],
    ];
    DMatrix::from_fn(6, 6, |i, j| rows[i][j] / t)
}

/// `Q(λ) = Q0 + λ Q1`.
pub fn q_pencil(eta: f64) -> (DMatrix<C64>, DMatrix<C64>) {
    let q0 = build_q(eta, C64::new(0.0, 0.0));
    let q1 = build_q(eta, C64::new(1.0, 0.0)) - &q0;
    (q0, q1)
}

/// The six roots of `det Q(λ0) = 0`, with the null vector `(α, β)` of the dominant root.
pub fn bsgs_sextic_roots(eta: f64) -> Result<SymbolSpectrum> {
    check_eta(eta)?;
    let (q0, q1) = q_pencil(eta);
    let mut spec = SymbolSpectrum::from_roots(pencil_roots(&q0, &q1)?);
    let (x, _) = null_vector(&build_q(eta, spec.dominant));
    spec.auxiliary = Some((x.rows(0, 3).into_owned(), x.rows(3, 3).into_owned()));
    Ok(spec)
}

/// Closed-form null vector of `Q(1/(5 - 4 cos η))`.
pub fn q_null_vector(eta: f64) -> DVector<C64> {
    let f = cis(eta) * (C64::new(2.0, 0.0) - cis(eta));
    let base = [-2.0, 0.0, 1.0];
    DVector::from_iterator(6, base.iter().map(|&x| f * x).chain(base.iter().map(|&x| C64::new(x, 0.0))))
}

/// Left null vector `ℓ` of `Q` at the dominant root.
pub fn q_left_vector(eta: f64) -> DVector<C64> {
    let g = C64::new(1.0, 0.0) - cis(eta) * 2.0;
    let one = C64::new(1.0, 0.0);
    DVector::from_vec(vec![one * 2.0, C64::default(), -one, -g * 2.0, C64::default(), g])
}

/// Lower, diagonal and upper stencil parts of the kernel symbol.
fn kernel_parts(order: usize, eta: f64) -> (DMatrix<C64>, DMatrix<C64>, DMatrix<C64>) {
    let k = kernel_operators();
    let (vp, vm, va, v) = (complexify(&k.plus), complexify(&k.minus), complexify(&k.abs), complexify(&k.v));
    let (e1m, e1p) = (cis(-eta), cis(eta));
    let (e2m, e2p) = (cis(-2.0 * eta), cis(2.0 * eta));
    if order == 1 {
        (-&vp * e1m, va, &vm * e1p)
    } else {
        let low = &vp * (e2m * 0.25) - (&v * C64::new(0.25, 0.0) + &vp) * e1m;
        let up = (&v * C64::new(0.25, 0.0) + &vm) * e1p - &vm * (e2p * 0.25);
        (low, va * C64::new(0.75, 0.0), up)
    }
}

/// Kernel-moment pencil of a relaxed symmetric sweep,
/// `Q(λ) = [[λ(L + D + αR), U - αR], [λ(L - αR), λ(D + αR + U)]]`, split as `Q0 + λ Q1`.
pub fn kernel_pencil(order: usize, alpha: f64, eta: f64) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    if order != 1 && order != 2 {
        return Err(FourierError::InvalidParameter(format!("order {order}")));
    }
    let (low, d, up) = kernel_parts(order, eta);
    let r = complexify(&kernel_operators().abs) * C64::new(alpha, 0.0);
    let mut q0 = DMatrix::zeros(6, 6);
    let mut q1 = DMatrix::zeros(6, 6);
    q0.view_mut((0, 3), (3, 3)).copy_from(&(&up - &r));
    q1.view_mut((0, 0), (3, 3)).copy_from(&(&low + &d + &r));
    q1.view_mut((3, 0), (3, 3)).copy_from(&(&low - &r));
    q1.view_mut((3, 3), (3, 3)).copy_from(&(&d + &r + &up));
    Ok((q0, q1))
}

/// Roots of the limit BSSR symbol equation. Only half-range moments of degree `≤ 5` enter,
/// so the truncation parameter is validated but does not change the result.
pub fn bssr_symbol(alpha: f64, eta: f64, n_trunc: usize) -> Result<SymbolSpectrum> {
    check_eta(eta)?;
    if !(alpha >= 0.0) {
        return Err(FourierError::InvalidParameter(format!("α = {alpha} must be nonnegative")));
    }
    if n_trunc < 3 {
        return Err(FourierError::InvalidParameter(format!("truncation {n_trunc} below the kernel size")));
    }
    let (q0, q1) = kernel_pencil(2, alpha, eta)?;
    Ok(SymbolSpectrum::from_roots(pencil_roots(&q0, &q1)?))
}

pub fn bssr_symbol_max(alpha: f64, eta: f64, n_trunc: usize) -> Result<f64> {
    Ok(bssr_symbol(alpha, eta, n_trunc)?.radius())
}
