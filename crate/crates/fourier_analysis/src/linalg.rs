use nalgebra::{Complex, DMatrix, DVector, Schur};

use crate::error::{FourierError, Result};

pub type C64 = Complex<f64>;

pub fn cis(x: f64) -> C64 {
    C64::from_polar(1.0, x)
}

pub fn complexify(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

pub fn eigenvalues(m: DMatrix<C64>) -> Result<Vec<C64>> {
    let size = m.nrows();
    let schur = Schur::try_new(m, 1e-15, 100_000).ok_or(FourierError::NoConvergence { size })?;
    let t = schur.unpack().1;
    Ok((0..size).map(|i| t[(i, i)]).collect())
}

pub fn solve(a: &DMatrix<C64>, b: &DMatrix<C64>, what: &str) -> Result<DMatrix<C64>> {
    a.clone().lu().solve(b).ok_or_else(|| FourierError::Singular(what.into()))
}

/// Roots of `det(Q0 + λ Q1) = 0` as the eigenvalues of `-Q1⁻¹ Q0`.
pub fn pencil_roots(q0: &DMatrix<C64>, q1: &DMatrix<C64>) -> Result<Vec<C64>> {
    let m = -solve(q1, q0, "λ-coefficient of the pencil")?;
    eigenvalues(m)
}

/// Right null vector of a square matrix: the right singular vector of its smallest singular value.
pub fn null_vector(m: &DMatrix<C64>) -> (DVector<C64>, f64) {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    let (k, s) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, s)| (k, *s))
        .expect("nonempty");
    (vt.row(k).adjoint(), s)
}
