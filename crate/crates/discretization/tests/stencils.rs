use discretization::{
    assemble, assemble_with_slope_factor, flux_split, reconstruct_faces, reconstruct_line, Closure,
    DiscreteOperator, FieldState, Grid, WallClosure,
};
use moment_basis::{
    build_burnett_system, build_hermite_system, BurnettSystemSpec, Collision, HermiteSystemSpec, MomentSystem,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn hermite(n: usize) -> MomentSystem {
    build_hermite_system(HermiteSystemSpec { n }).unwrap()
}

fn lcg(seed: &mut u64) -> f64 {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    ((*seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
}

fn random_wall(n: usize, seed: &mut u64) -> WallClosure {
    WallClosure {
        g: DMatrix::from_fn(n, n, |_, _| lcg(seed)),
        c: DVector::from_fn(n, |_, _| lcg(seed)),
    }
}

fn random_state(cells: usize, n: usize, seed: &mut u64) -> FieldState {
    let mut s = FieldState::zeros(cells, n, 1.0);
    s.data.iter_mut().for_each(|x| *x = lcg(seed));
    s
}

fn block(op: &DiscreteOperator, j: usize, k: usize) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(op.n, op.n);
    if j == k {
        b += op.diag(j);
    }
    for &(c, id) in &op.rows[j].nbrs {
        if c == k {
            b += &op.blocks[id];
        }
    }
    b
}

fn close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
    (a - b).amax() <= tol
}

#[test]
fn first_order_interior_row() {
    let sys = hermite(5);
    let (m, eps) = (10, 0.3);
    let grid = Grid::line(m).unwrap();
    let n = sys.n_vars();
    let mut seed = 7;
    let walls = Closure::Walls(vec![[random_wall(n, &mut seed), random_wall(n, &mut seed)]]);
    let op = assemble(&sys, &grid, &walls, 1, eps).unwrap();
    let s = flux_split(&sys.a[0]).unwrap();
    let h = &s.abs - sys.lmat() * (grid.dx() / eps);
    for j in 1..m - 1 {
        assert!(close(&block(&op, j, j - 1), &(-&s.plus), 1e-14));
        assert!(close(&block(&op, j, j), &h, 1e-14));
        assert!(close(&block(&op, j, j + 1), &s.minus, 1e-14));
        assert_eq!(op.rows[j].nbrs.len(), 2);
        assert!(op.rows[j].rhs.is_none());
    }
}

#[test]
fn second_order_interior_row() {
    let sys = hermite(5);
    let (m, eps) = (12, 0.05);
    let grid = Grid::line(m).unwrap();
    let n = sys.n_vars();
    let mut seed = 3;
    let walls = Closure::Walls(vec![[random_wall(n, &mut seed), random_wall(n, &mut seed)]]);
    let op = assemble(&sys, &grid, &walls, 2, eps).unwrap();
    let s = flux_split(&sys.a[0]).unwrap();
    let (p, q) = (&s.plus, &s.minus);
    let expect = [
        p * 0.25,
        -p * 1.25 - q * 0.25,
        &s.abs * 0.75 - sys.lmat() * (grid.dx() / eps),
        p * 0.25 + q * 1.25,
        -q * 0.25,
    ];
    for j in 2..m - 2 {
        for (k, e) in expect.iter().enumerate() {
            assert!(close(&block(&op, j, j + k - 2), e, 1e-14), "j={j} k={k}");
        }
    }
}

#[test]
fn zero_slopes_give_first_order() {
    let sys = hermite(6);
    let grid = Grid::line(9).unwrap();
    let n = sys.n_vars();
    let mut seed = 11;
    let walls = Closure::Walls(vec![[random_wall(n, &mut seed), random_wall(n, &mut seed)]]);
    let o1 = assemble(&sys, &grid, &walls, 1, 0.1).unwrap();
    let o2 = assemble_with_slope_factor(&sys, &grid, &walls, 2, 0.1, 0.0).unwrap();
    let u = random_state(9, n, &mut seed);
    assert_eq!(o1.apply(&u), o2.apply(&u));
    for j in 0..9 {
        for k in 0..9 {
            assert_eq!(block(&o1, j, k), block(&o2, j, k));
        }
    }
}

#[test]
fn collision_free_operator_ignores_eps() {
    let mut sys = hermite(4);
    sys.l_diag.iter_mut().for_each(|x| *x = 0.0);
    let grid = Grid::line(8).unwrap();
    let n = sys.n_vars();
    let mut seed = 5;
    let walls = Closure::Walls(vec![[random_wall(n, &mut seed), random_wall(n, &mut seed)]]);
    let u = random_state(8, n, &mut seed);
    for order in [1, 2] {
        let a = assemble(&sys, &grid, &walls, order, 1e-5).unwrap().apply(&u);
        let b = assemble(&sys, &grid, &walls, order, 7.0).unwrap().apply(&u);
        assert_eq!(a, b);
    }
}

#[test]
fn face_reconstruction_examples() {
    let grid = Grid::line(6).unwrap();
    let walls = Closure::Walls(vec![[
        WallClosure { g: DMatrix::identity(1, 1), c: DVector::zeros(1) },
        WallClosure { g: DMatrix::identity(1, 1), c: DVector::zeros(1) },
    ]]);
    let constant = FieldState::from_cells(&vec![vec![2.5]; 6], 1.0).unwrap();
    for order in [1, 2] {
        for f in reconstruct_faces(&constant, &grid, order, &walls).unwrap() {
            assert_eq!((f.minus[0], f.plus[0]), (2.5, 2.5));
        }
    }
    let linear = FieldState::from_cells(&(0..6).map(|j| vec![j as f64]).collect::<Vec<_>>(), 1.0).unwrap();
    let faces = reconstruct_faces(&linear, &grid, 2, &walls).unwrap();
    for j in 0..6 {
        assert!((faces[j + 1].minus[0] - (j as f64 + 0.5)).abs() < 1e-15);
    }
    let first = reconstruct_faces(&linear, &grid, 1, &walls).unwrap();
    for j in 0..5 {
        assert_eq!((first[j + 1].minus[0], first[j + 1].plus[0]), (j as f64, j as f64 + 1.0));
    }
    let cells = [1.0, 3.0, 4.0, 0.0].map(|x| DVector::from_element(1, x));
    let faces = reconstruct_line(&cells, 2, false, None, None);
    assert_eq!(faces[0].plus[0], 0.0);
}

/// Row evaluation straight from face values, independent of the block assembly.
fn face_rows(sys: &MomentSystem, grid: &Grid, closure: &Closure, order: usize, u: &FieldState) -> FieldState {
    let s = flux_split(&sys.a[0]).unwrap();
    let faces = reconstruct_faces(u, grid, order, closure).unwrap();
    let m = grid.n_cells();
    let coll = sys.lmat() * (-grid.dx() / u.eps);
    let mut out = FieldState::zeros(m, sys.n_vars(), u.eps);
    for j in 0..m {
        let (l, r) = if grid.periodic { (&faces[j], &faces[(j + 1) % m]) } else { (&faces[j], &faces[j + 1]) };
        let v = &s.plus * (&r.minus - &l.minus)
            + &s.minus * (&r.plus - &l.plus)
            + &coll * DVector::from_column_slice(u.cell(j));
        out.cell_mut(j).copy_from_slice(v.as_slice());
    }
    out
}

#[test]
fn assembly_matches_face_fluxes() {
    let sys = hermite(5);
    let n = sys.n_vars();
    let mut seed = 99;
    for m in [4, 5, 9] {
        let grid = Grid::line(m).unwrap();
        let walls = Closure::Walls(vec![[random_wall(n, &mut seed), random_wall(n, &mut seed)]]);
        let mut u = random_state(m, n, &mut seed);
        u.eps = 0.2;
        for order in [1, 2] {
            let op = assemble(&sys, &grid, &walls, order, u.eps).unwrap();
            let d = op.apply(&u).distance(&face_rows(&sys, &grid, &walls, order, &u));
            assert!(d < 1e-13, "m={m} order={order} d={d}");
        }
        let pgrid = Grid::periodic_line(m).unwrap();
        for order in [1, 2] {
            let op = assemble(&sys, &pgrid, &Closure::Periodic, order, u.eps).unwrap();
            let d = op.apply(&u).distance(&face_rows(&sys, &pgrid, &Closure::Periodic, order, &u));
            assert!(d < 1e-13, "periodic m={m} order={order} d={d}");
        }
    }
}

#[test]
fn single_cell_first_order() {
    let sys = hermite(3);
    let n = sys.n_vars();
    let mut seed = 1;
    let walls = Closure::Walls(vec![[random_wall(n, &mut seed), random_wall(n, &mut seed)]]);
    let op = assemble(&sys, &Grid::line(1).unwrap(), &walls, 1, 1.0).unwrap();
    assert!(op.rows[0].nbrs.is_empty());
    assert!(assemble(&sys, &Grid::line(3).unwrap(), &walls, 2, 1.0).is_err());
}

#[test]
fn residual_properties() {
    let sys = hermite(4);
    let n = sys.n_vars();
    let grid = Grid::line(10).unwrap();
    let mut seed = 21;
    let mut wl = random_wall(n, &mut seed);
    let mut wr = random_wall(n, &mut seed);
    let forced = Closure::Walls(vec![[wl.clone(), wr.clone()]]);
    let op = assemble(&sys, &grid, &forced, 2, 0.5).unwrap();
    assert!(op.residual(&FieldState::zeros(10, n, 0.5)) > 0.0);

    wl.c.fill(0.0);
    wr.c.fill(0.0);
    let homog = assemble(&sys, &grid, &Closure::Walls(vec![[wl, wr]]), 2, 0.5).unwrap();
    let u = random_state(10, n, &mut seed);
    let mut u2 = u.clone();
    u2.data.iter_mut().for_each(|x| *x *= 2.0);
    let (r1, r2) = (homog.residual(&u), homog.residual(&u2));
    assert!((r2 - 2.0 * r1).abs() <= 1e-14 * r1);
    assert!(homog.residual(&FieldState::zeros(10, n, 0.5)) == 0.0);
}

#[test]
fn exact_solution_has_tiny_residual() {
    // Dense solve of the assembled system, then check the fixed point.
    let sys = hermite(5);
    let n = sys.n_vars();
    let grid = Grid::line(12).unwrap();
    let mut seed = 4;
    let mut walls = [random_wall(n, &mut seed), random_wall(n, &mut seed)];
    for w in &mut walls {
        w.g *= 0.1;
    }
    let op = assemble(&sys, &grid, &Closure::Walls(vec![walls]), 1, 0.3).unwrap();
    let size = 12 * n;
    let mut k = DMatrix::zeros(size, size);
    let mut rhs = DVector::zeros(size);
    for j in 0..12 {
        for c in 0..12 {
            k.view_mut((j * n, c * n), (n, n)).copy_from(&block(&op, j, c));
        }
        if let Some(id) = op.rows[j].rhs {
            rhs.rows_mut(j * n, n).copy_from(&(-&op.consts[id]));
        }
    }
    let sol = k.lu().solve(&rhs).unwrap();
    let u = FieldState { n_vars: n, data: sol.as_slice().to_vec(), eps: 0.3 };
    assert!(op.residual(&u) <= 1e-13 * u.norm().max(1.0));
}

#[test]
fn constant_in_y_matches_x_slice() {
    let sys2 = build_burnett_system(BurnettSystemSpec { l_trunc: 3, collision: Collision::Bgk }).unwrap();
    let mut sys1 = sys2.clone();
    sys1.a.truncate(1);
    let n = sys2.n_vars();
    let (mx, my, eps) = (6, 5, 0.2);
    let mut seed = 8;
    let xwalls = [random_wall(n, &mut seed), random_wall(n, &mut seed)];
    // Identity ghost maps in y make a y-constant field flux-free in y.
    let ywall = WallClosure { g: DMatrix::identity(n, n), c: DVector::zeros(n) };
    let c2 = Closure::Walls(vec![xwalls.clone(), [ywall.clone(), ywall]]);
    let c1 = Closure::Walls(vec![xwalls]);
    let line = random_state(mx, n, &mut seed);
    let mut field = FieldState::zeros(mx * my, n, eps);
    for k in 0..my {
        for i in 0..mx {
            field.cell_mut(k * mx + i).copy_from_slice(line.cell(i));
        }
    }
    for order in [1, 2] {
        let op2 = assemble(&sys2, &Grid::square(mx, my).unwrap(), &c2, order, eps).unwrap();
        let op1 = assemble(&sys1, &Grid::line(mx).unwrap(), &c1, order, eps).unwrap();
        let (r2, r1) = (op2.apply(&field), op1.apply(&line));
        for k in 0..my {
            for i in 0..mx {
                let d: f64 = r2.cell(k * mx + i).iter().zip(r1.cell(i)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert!(d < 1e-12, "order {order} cell ({i},{k}) diff {d}");
            }
        }
    }
}

#[test]
fn square_grid_scales_y_direction() {
    let sys = build_burnett_system(BurnettSystemSpec { l_trunc: 2, collision: Collision::Bgk }).unwrap();
    let grid = Grid::new(vec![8, 4], true).unwrap();
    let op = assemble(&sys, &grid, &Closure::Periodic, 1, 1.0).unwrap();
    let sy = flux_split(&sys.a[1]).unwrap();
    let j = grid.index(&[3, 2]);
    let below = grid.index(&[3, 1]);
    assert!(close(&block(&op, j, below), &(-&sy.plus * 0.5), 1e-14));
    let expect_diag = &op.splits[0].abs + &sy.abs * 0.5 - sys.lmat() * 0.125;
    assert!(close(op.diag(j), &expect_diag, 1e-14));
    assert!(close(&op.relax, &(&op.splits[0].abs + &sy.abs * 0.5), 1e-14));
}

proptest! {
    #[test]
    fn operator_is_affine(m in 4usize..10, order in 1usize..3, a in -3.0f64..3.0, seed in 0u64..1000) {
        let sys = hermite(4);
        let n = sys.n_vars();
        let mut s = seed;
        let walls = Closure::Walls(vec![[random_wall(n, &mut s), random_wall(n, &mut s)]]);
        let op = assemble(&sys, &Grid::line(m).unwrap(), &walls, order, 0.7).unwrap();
        let hom = op.homogeneous();
        let u = random_state(m, n, &mut s);
        let v = random_state(m, n, &mut s);
        let mut w = u.clone();
        w.data.iter_mut().zip(&v.data).for_each(|(x, y)| *x += a * y);
        let lhs = hom.apply(&w);
        let (hu, hv) = (hom.apply(&u), hom.apply(&v));
        for i in 0..lhs.data.len() {
            prop_assert!((lhs.data[i] - hu.data[i] - a * hv.data[i]).abs() < 1e-11);
        }
        let full = op.apply(&u);
        let zero = op.apply(&FieldState::zeros(m, n, 0.7));
        for i in 0..full.data.len() {
            prop_assert!((full.data[i] - hu.data[i] - zero.data[i]).abs() < 1e-12);
        }
    }
}
