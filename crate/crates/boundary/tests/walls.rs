use std::f64::consts::PI;

use boundary::*;
use discretization::{assemble, FieldState, Grid};
use moment_basis::quadrature::{gauss_hermite, gauss_legendre, half_moment};
use moment_basis::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn hermite(n: usize) -> MomentSystem {
    build_hermite_system(HermiteSystemSpec { n }).unwrap()
}

fn burnett(l: usize) -> MomentSystem {
    build_burnett_system(BurnettSystemSpec { l_trunc: l, collision: Collision::Bgk }).unwrap()
}

/// Monomial coefficients of He_0..He_n.
fn hermite_polys(n: usize) -> Vec<Vec<f64>> {
    let mut p = vec![vec![1.0], vec![0.0, 1.0]];
    for k in 1..n {
        let mut next = vec![0.0; k + 2];
        for (i, c) in p[k].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in p[k - 1].iter().enumerate() {
            next[i] -= k as f64 * c;
        }
        p.push(next);
    }
    p.truncate(n + 1);
    p
}

/// `∫_0^∞ He_a He_b ω` from closed-form half moments.
fn half_product(p: &[Vec<f64>], a: usize, b: usize) -> f64 {
    let mut s = 0.0;
    for (i, x) in p[a].iter().enumerate() {
        for (j, y) in p[b].iter().enumerate() {
            s += x * y * half_moment((i + j) as u32);
        }
    }
    s
}

#[test]
fn hermite_left_wall_from_half_moments() {
    let n = 5;
    let sys = hermite(n);
    let op = build_wall_operator(&sys, &WallBC::new(WallSide::Left, 1.0)).unwrap();
    assert_eq!(op.odd, vec![1, 3, 5]);
    assert_eq!(op.even, vec![0, 2, 4]);
    let p = hermite_polys(n);
    let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    let s = DMatrix::from_fn(3, 3, |r, c| 2.0 / fact(op.odd[r]) * half_product(&p, op.odd[r], op.even[c]));
    let h1 = s.column(0).clone_owned();
    let ht = s.column(1) * 0.5;
    let b = -&s + &h1 * s.row(0) / h1[0];
    let g = &ht - &h1 * (ht[0] / h1[0]);
    assert!((&op.b - &b).amax() < 1e-13);
    assert!((&op.g - &g).amax() < 1e-13);
    let expect_b = DMatrix::from_row_slice(3, 3, &[
        0.0, 0.0, 0.0,
        0.0, -0.53192304, -1.06384608,
        0.0, 0.0531923, -0.31915382,
    ]);
    assert!((&op.b - expect_b).amax() < 1e-7);
    assert!((&op.g - DVector::from_row_slice(&[0.0, 0.26596152, -0.02659615])).amax() < 1e-7);
}

#[test]
fn right_wall_flips_signs() {
    for sys in [hermite(7), burnett(4)] {
        let walls: Vec<(WallSide, WallSide)> = if sys.dim_x() == 1 {
            vec![(WallSide::Left, WallSide::Right)]
        } else {
            vec![(WallSide::Left, WallSide::Right), (WallSide::Bottom, WallSide::Top)]
        };
        for (lo, hi) in walls {
            let u = if sys.dim_x() == 2 { vec![0.0; 2] } else { vec![] };
            let mut uw = u.clone();
            if sys.dim_x() == 2 {
                uw[1 - lo.direction()] = 0.7;
            }
            let l = build_wall_operator(&sys, &WallBC::new(lo, 0.3).with_velocity(uw.clone())).unwrap();
            let r = build_wall_operator(&sys, &WallBC::new(hi, 0.3).with_velocity(uw)).unwrap();
            assert!((&l.b + &r.b).amax() < 1e-13);
            assert!((&l.forcing() + &r.forcing()).amax() < 1e-13);
        }
    }
}

fn equilibrium(sys: &MomentSystem, rho: f64, t: f64, u: &[f64]) -> DVector<f64> {
    let mut e = sys.density_coeffs() * rho + sys.temperature_coeffs() * t;
    for (d, ud) in u.iter().enumerate() {
        e += sys.velocity_coeffs(sys.velocity_axis(d)) * *ud;
    }
    e
}

#[test]
fn wall_equilibrium_has_no_odd_moments() {
    let cases: Vec<(MomentSystem, Vec<WallBC>)> = vec![
        (hermite(5), vec![WallBC::new(WallSide::Left, 0.4), WallBC::new(WallSide::Right, 1.3)]),
        (hermite(16), vec![WallBC::new(WallSide::Right, 1.0)]),
        (
            burnett(5),
            vec![
                WallBC::new(WallSide::Left, 0.2).with_velocity(vec![0.0, 0.5]),
                WallBC::new(WallSide::Top, 1.0).with_velocity(vec![1.0, 0.0]),
                WallBC::new(WallSide::Bottom, -0.3).with_velocity(vec![0.25, 0.0]),
                WallBC::new(WallSide::Right, 0.0),
            ],
        ),
    ];
    for (sys, walls) in cases {
        for w in walls {
            let op = build_wall_operator(&sys, &w).unwrap();
            let mut u = w.u_w.clone();
            u.resize(sys.dim_x(), 0.0);
            // any density: the wall density adjusts to it
            for rho in [0.0, 1.0, -2.5] {
                let eq = equilibrium(&sys, rho, w.t_w, &u);
                let odd = op.odd_moments(&eq);
                let expect = DVector::from_iterator(op.odd.len(), op.odd.iter().map(|&k| eq[k]));
                assert!((odd - expect).amax() < 1e-12, "{:?}", w.wall);
            }
        }
    }
}

/// Independent half-space rule: Gauss-Legendre on [0, 12] for the normal axis.
fn legendre_half_space(vdim: usize, axis: usize, sigma: f64, n: usize) -> Vec<(Vec<f64>, f64)> {
    let gl = gauss_legendre(60);
    let line: Vec<(f64, f64)> = gl
        .nodes
        .iter()
        .zip(&gl.weights)
        .map(|(x, w)| {
            let v = 6.0 * (x + 1.0);
            (sigma * v, 6.0 * w * (-0.5 * v * v).exp() / (2.0 * PI).sqrt())
        })
        .collect();
    let gh = gauss_hermite(n);
    let mut pts = vec![(vec![], 1.0)];
    for d in 0..vdim {
        let rule: Vec<(f64, f64)> = if d == axis { line.clone() } else { gh.nodes.iter().copied().zip(gh.weights.iter().copied()).collect() };
        let mut next = Vec::new();
        for (v, w) in &pts {
            for &(x, wx) in &rule {
                let mut v: Vec<f64> = v.clone();
                v.push(x);
                next.push((v, w * wx));
            }
        }
        pts = next;
    }
    pts
}

#[test]
fn half_space_rules_agree() {
    let sys = burnett(4);
    for sigma in [1.0, -1.0] {
        let a = half_space_points(3, 1, sigma, 6);
        let b = legendre_half_space(3, 1, sigma, 6);
        let mut ia = vec![0.0; sys.n_vars()];
        let mut ib = ia.clone();
        for (pts, acc) in [(a, &mut ia), (b, &mut ib)] {
            for (v, w) in pts {
                let phi = sys.eval_basis(&v);
                for k in 0..phi.len() {
                    acc[k] += w * phi[k] * v[1];
                }
            }
        }
        for k in 0..ia.len() {
            assert!((ia[k] - ib[k]).abs() < 1e-12, "k={k}");
        }
    }
}

/// Closed boundary state versus the wall Maxwellian, tested against every odd function
/// on the incoming half-space. The mismatch must be a pure wall-density term.
fn check_matching(sys: &MomentSystem, w: &WallBC, u: &DVector<f64>) {
    let op = build_wall_operator(sys, w).unwrap();
    let fb = op.boundary_state(u);
    let axis = sys.velocity_axis(w.wall.direction());
    let mut uw = w.u_w.clone();
    uw.resize(sys.dim_x(), 0.0);
    let fw = equilibrium(sys, 0.0, w.t_w, &uw);
    let diff = fb - fw;
    let pts = legendre_half_space(sys.velocity_dim(), axis, w.wall.inward(), 10);
    let mut r = DVector::<f64>::zeros(op.odd.len());
    let mut h1 = DVector::<f64>::zeros(op.odd.len());
    let mut flux = 0.0f64;
    for (v, wt) in &pts {
        let phi = DVector::from_vec(sys.eval_basis(v));
        let f = phi.dot(&diff);
        for (i, &k) in op.odd.iter().enumerate() {
            r[i] += wt * phi[k] * f;
            h1[i] += wt * phi[k];
        }
        flux += wt * v[axis] * phi.dot(&op.boundary_state(u));
        // mirrored point covers the outgoing half
        let mut vm = v.clone();
        vm[axis] = -vm[axis];
        let phim = DVector::from_vec(sys.eval_basis(&vm));
        flux += wt * vm[axis] * phim.dot(&op.boundary_state(u));
    }
    let rho_w = r.dot(&h1) / h1.dot(&h1);
    assert!((&r - &h1 * rho_w).amax() < 1e-11 * (1.0 + u.amax()), "{:?}", w.wall);
    assert!(flux.abs() < 1e-12 * (1.0 + u.amax()), "flux {flux:e}");
}

#[test]
fn galerkin_matching_and_zero_mass_flux() {
    let mut seed = 17u64;
    let mut rnd = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    let h = hermite(8);
    for side in [WallSide::Left, WallSide::Right] {
        let u = DVector::from_fn(h.n_vars(), |_, _| rnd());
        check_matching(&h, &WallBC::new(side, 0.7), &u);
    }
    let b = burnett(3);
    for side in [WallSide::Left, WallSide::Right, WallSide::Bottom, WallSide::Top] {
        let u = DVector::from_fn(b.n_vars(), |_, _| rnd());
        let uw = if side.direction() == 0 { vec![0.0, 0.4] } else { vec![-0.6, 0.0] };
        check_matching(&b, &WallBC::new(side, 1.2).with_velocity(uw), &u);
    }
}

#[test]
fn ghost_values() {
    let sys = hermite(5);
    let op = build_wall_operator(&sys, &WallBC::new(WallSide::Left, 0.0)).unwrap();
    let mut face = DVector::from_row_slice(&[0.3, 0.0, 1.1, 0.0, -0.4, 0.0]);
    // T_w = 0 and zero interior odd moments give 2 B u_even as the odd ghost part
    let ghost = op.ghost(&face);
    let bu = op.odd_moments(&face);
    for (r, &k) in op.odd.iter().enumerate() {
        assert!((ghost[k] - 2.0 * bu[r]).abs() < 1e-15);
    }
    for &e in &op.even {
        assert_eq!(ghost[e], face[e]);
    }
    face[3] = 0.8;
    let right = build_wall_operator(&sys, &WallBC::new(WallSide::Right, 1.0)).unwrap();
    let left = build_wall_operator(&sys, &WallBC::new(WallSide::Left, 1.0)).unwrap();
    let ghost = right.ghost(&face);
    let ue = DVector::from_iterator(3, left.even.iter().map(|&e| face[e]));
    let ref_odd = (&left.b * ue + &left.g) * -2.0;
    for (r, &k) in right.odd.iter().enumerate() {
        assert!((ghost[k] - (ref_odd[r] - face[k])).abs() < 1e-14);
    }
    // zero data, B masked out: pure odd reflection
    let mut zero = op.clone();
    zero.b.fill(0.0);
    let g = zero.ghost(&face);
    for &k in &zero.odd {
        assert_eq!(g[k], -face[k]);
    }
}

#[test]
fn mass_normalization() {
    let sys = hermite(4);
    let grid = Grid::line(10).unwrap();
    let mut s = FieldState::zeros(10, sys.n_vars(), 1.0);
    normalize_mass(&sys, &grid, &mut s, 1.0);
    assert!(s.component(0).all(|x| (x - 1.0).abs() < 1e-15));
    let before = s.clone();
    normalize_mass(&sys, &grid, &mut s, 1.0);
    assert_eq!(before, s);

    let b = burnett(2);
    let g2 = Grid::square(6, 4).unwrap();
    let mut s2 = FieldState::zeros(24, b.n_vars(), 1.0);
    s2.data.iter_mut().enumerate().for_each(|(i, x)| *x = (i as f64 * 0.37).sin());
    normalize_mass(&b, &g2, &mut s2, 1.0);
    let m: f64 = s2.component(0).sum::<f64>() * g2.cell_volume() / (2.0 * PI.sqrt());
    assert!((m - 1.0).abs() < 1e-14);
    assert!((total_mass(&b, &g2, &s2) - 1.0).abs() < 1e-14);
}

#[test]
fn uniform_density_shift_is_invisible_to_the_operator() {
    let sys = burnett(3);
    let walls = vec![
        WallBC::new(WallSide::Left, 0.0),
        WallBC::new(WallSide::Right, 0.0),
        WallBC::new(WallSide::Bottom, 0.0),
        WallBC::new(WallSide::Top, 1.0).with_velocity(vec![1.0, 0.0]),
    ];
    let closure = wall_closures(&sys, &walls).unwrap();
    let grid = Grid::square(5, 6).unwrap();
    for order in [1, 2] {
        let op = assemble(&sys, &grid, &closure, order, 0.1).unwrap();
        let mut s = FieldState::zeros(30, sys.n_vars(), 0.1);
        s.data.iter_mut().enumerate().for_each(|(i, x)| *x = (i as f64 * 0.71).cos());
        let r0 = op.apply(&s);
        normalize_mass(&sys, &grid, &mut s, 3.0);
        let r1 = op.apply(&s);
        assert!(r0.distance(&r1) < 1e-13);
    }
}

#[test]
fn closure_assembly_errors() {
    let sys = burnett(2);
    let three = vec![
        WallBC::new(WallSide::Left, 0.0),
        WallBC::new(WallSide::Right, 0.0),
        WallBC::new(WallSide::Bottom, 0.0),
    ];
    assert!(wall_closures(&sys, &three).is_err());
    let mut dup = three.clone();
    dup.push(WallBC::new(WallSide::Left, 0.0));
    assert!(wall_closures(&sys, &dup).is_err());
    let normal = WallBC::new(WallSide::Top, 1.0).with_velocity(vec![0.0, 1.0]);
    assert!(matches!(build_wall_operator(&sys, &normal), Err(BoundaryError::InvalidWall(_))));
    assert!(build_wall_operator(&hermite(3), &WallBC::new(WallSide::Top, 1.0)).is_err());
}

#[test]
fn wall_spec_json() {
    let w: WallBC = serde_json::from_str(r#"{"wall":"top","T_w":1.0,"U_w":[1.0,0.0]}"#).unwrap();
    assert_eq!(w, WallBC::new(WallSide::Top, 1.0).with_velocity(vec![1.0, 0.0]));
    let l: WallBC = serde_json::from_str(r#"{"wall":"left","T_w":0.0}"#).unwrap();
    assert!(l.u_w.is_empty());
}

proptest! {
    #[test]
    fn closed_state_carries_no_mass_flux(
        coeffs in prop::collection::vec(-1.0f64..1.0, 13),
        t_w in -2.0f64..2.0,
        u_t in -1.0f64..1.0,
        side in 0usize..4,
    ) {
        let sys = burnett(2);
        let wall = [WallSide::Left, WallSide::Right, WallSide::Bottom, WallSide::Top][side];
        let mut uw = vec![0.0, 0.0];
        uw[1 - wall.direction()] = u_t;
        let op = build_wall_operator(&sys, &WallBC::new(wall, t_w).with_velocity(uw)).unwrap();
        let fb = op.boundary_state(&DVector::from_vec(coeffs));
        let axis = sys.velocity_axis(wall.direction());
        let vn = sys.velocity_coeffs(axis);
        let k = (0..13).find(|&k| vn[k] != 0.0).unwrap();
        prop_assert!(fb[k].abs() < 1e-12);
    }
}
