use moment_basis::*;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use proptest::prelude::*;

fn symmetrized_hermite(n: usize) -> DMatrix<f64> {
    // D A D^{-1} with D = diag(sqrt(m!))
    let a = hermite_advection(n);
    let d: Vec<f64> = (0..=n).map(|m| (1..=m).map(|k| k as f64).product::<f64>().sqrt()).collect();
    DMatrix::from_fn(n + 1, n + 1, |i, j| d[i] * a[(i, j)] / d[j])
}

#[test]
fn hermite_n1_eigenvalues() {
    let e = SymmetricEigen::new(symmetrized_hermite(1)).eigenvalues;
    let mut v: Vec<f64> = e.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    assert!((v[0] + 1.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn hermite_spectrum_real_and_simple(n in 1usize..40) {
        let s = symmetrized_hermite(n);
        prop_assert!((&s - s.transpose()).amax() < 1e-9 * s.amax());
        let mut e: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
        e.sort_by(f64::total_cmp);
        for w in e.windows(2) {
            prop_assert!(w[1] - w[0] > 1e-6);
        }
    }

    #[test]
    fn collision_is_nsd(n in 2usize..30, x in proptest::collection::vec(-10.0f64..10.0, 31)) {
        let sys = build_hermite_system(HermiteSystemSpec { n }).unwrap();
        let v = DVector::from_column_slice(&x[..=n]);
        let q = v.dot(&(sys.lmat() * &v));
        prop_assert!(q <= 0.0);
        let mut k = DVector::zeros(n + 1);
        for &i in &sys.kernel() { k[i] = x[i]; }
        prop_assert_eq!((sys.lmat() * k).amax(), 0.0);
    }

    #[test]
    fn burnett_count_formula(l in 1usize..12) {
        let direct: usize = (0..=l).map(|j| (2 * j + 1) * ((l - j).div_ceil(2) + 1)).sum();
        prop_assert_eq!(burnett::labels(l).len(), direct);
    }
}
