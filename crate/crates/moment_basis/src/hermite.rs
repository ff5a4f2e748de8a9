use nalgebra::DMatrix;

use crate::error::BasisError;
use crate::system::{Basis, Collision, Label, MomentSystem};

/// Hermite moment system: `f = sum u^n He_n(v) omega(v)` with BGK collisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermiteSystemSpec {
    pub n: usize,
}

/// Advection matrix of the Hermite system, any `n >= 1`.
/// `v He_m = He_{m+1} + m He_{m-1}` gives superdiagonal `1..n` and unit subdiagonal.
pub fn hermite_advection(n: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n + 1, n + 1);
    for m in 0..n {
        a[(m, m + 1)] = (m + 1) as f64;
        a[(m + 1, m)] = 1.0;
    }
    a
}

pub fn build_hermite_system(spec: HermiteSystemSpec) -> Result<MomentSystem, BasisError> {
    if spec.n < 2 {
        return Err(BasisError::InvalidSpec(format!(
            "Hermite degree {} < 2 cannot hold the collision invariants",
            spec.n
        )));
    }
    let n = spec.n;
    let l_diag = (0..=n).map(|k| if k < 3 { 0.0 } else { -1.0 }).collect();
    Ok(MomentSystem {
        basis: Basis::Hermite { n },
        collision: Collision::Bgk,
        labels: (0..=n).map(Label::Hermite).collect(),
        a: vec![hermite_advection(n)],
        l_diag,
    })
}

/// Probabilists' Hermite polynomials `He_0..He_n` at `v`.
pub fn hermite_values(n: usize, v: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(1.0);
    if n >= 1 {
        h.push(v);
    }
    for k in 1..n {
        let next = v * h[k] - k as f64 * h[k - 1];
        h.push(next);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_matrix() {
        let s = build_hermite_system(HermiteSystemSpec { n: 2 }).unwrap();
        let expect = DMatrix::from_row_slice(3, 3, &[0., 1., 0., 1., 0., 2., 0., 1., 0.]);
        assert_eq!(s.a[0], expect);
    }

    #[test]
    fn n5_collision() {
        let s = build_hermite_system(HermiteSystemSpec { n: 5 }).unwrap();
        assert_eq!(s.l_diag, vec![0., 0., 0., -1., -1., -1.]);
    }

    #[test]
    fn n1_rejected() {
        assert!(build_hermite_system(HermiteSystemSpec { n: 1 }).is_err());
    }

    #[test]
    fn recurrence() {
        let h = hermite_values(4, 2.0);
        assert_eq!(h, vec![1.0, 2.0, 3.0, 2.0, -5.0]);
    }
}
