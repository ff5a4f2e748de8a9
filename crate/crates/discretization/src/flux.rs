use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::DiscError;

/// Upwind splitting `A = A⁺ + A⁻`, `|A| = A⁺ − A⁻` with `|A| = R |D| R⁻¹`.
#[derive(Debug, Clone)]
pub struct FluxSplit {
    pub plus: DMatrix<f64>,
    pub minus: DMatrix<f64>,
    pub abs: DMatrix<f64>,
    pub r: DMatrix<f64>,
    pub eigenvalues: Vec<f64>,
}

pub fn flux_split(a: &DMatrix<f64>) -> Result<FluxSplit, DiscError> {
    if !a.is_square() {
        return Err(DiscError::Dimension { expected: a.nrows(), got: a.ncols() });
    }
    let (eigenvalues, r, abs) = match diagonal_symmetrizer(a) {
        Some(d) => split_symmetrizable(a, &d),
        None => split_general(a)?,
    };
    let plus = (a + &abs) * 0.5;
    let minus = (a - &abs) * 0.5;
    Ok(FluxSplit { plus, minus, abs, r, eigenvalues })
}

/// Positive diagonal `d` with `diag(d) A diag(d)⁻¹` symmetric, when one exists.
fn diagonal_symmetrizer(a: &DMatrix<f64>) -> Option<Vec<f64>> {
    let n = a.nrows();
    let scale = a.amax().max(1.0);
    let tol = 1e-14 * scale;
    let mut d = vec![0.0; n];
    for root in 0..n {
        if d[root] != 0.0 {
            continue;
        }
        d[root] = 1.0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j == i || (a[(i, j)].abs() <= tol && a[(j, i)].abs() <= tol) {
                    continue;
                }
                let (aij, aji) = (a[(i, j)], a[(j, i)]);
                if aij * aji <= 0.0 {
                    return None;
                }
                let dj = d[i] * (aij / aji).sqrt();
                if d[j] == 0.0 {
                    d[j] = dj;
                    queue.push_back(j);
                } else if ((d[j] - dj) / dj).abs() > 1e-10 {
                    return None;
                }
            }
        }
    }
    Some(d)
}

fn split_symmetrizable(a: &DMatrix<f64>, d: &[f64]) -> (Vec<f64>, DMatrix<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut s = DMatrix::from_fn(n, n, |i, j| d[i] * a[(i, j)] / d[j]);
    s = (&s + s.transpose()) * 0.5;
    let eig = SymmetricEigen::new(s);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let lam: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let v = DMatrix::from_fn(n, n, |i, c| eig.eigenvectors[(i, order[c])]);
    // |S| = V |Λ| Vᵀ, then undo the similarity.
    let vabs = DMatrix::from_fn(n, n, |i, c| v[(i, c)] * lam[c].abs());
    let sabs = &vabs * v.transpose();
    let abs = DMatrix::from_fn(n, n, |i, j| sabs[(i, j)] * d[j] / d[i]);
    let mut r = DMatrix::from_fn(n, n, |i, c| v[(i, c)] / d[i]);
    normalize_columns(&mut r);
    (lam, r, abs)
}

fn split_general(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>, DMatrix<f64>), DiscError> {
    let n = a.nrows();
    let scale = a.amax().max(1.0);
    let ev = a.clone().complex_eigenvalues();
    let mut lam = Vec::with_capacity(n);
    for z in ev.iter() {
        if z.im.abs() > 1e-8 * scale {
            return Err(DiscError::NonHyperbolic(z.im));
        }
        lam.push(z.re);
    }
    lam.sort_by(f64::total_cmp);
    // Group numerically repeated eigenvalues and take a null-space basis per group.
    let mut r = DMatrix::zeros(n, n);
    let mut col = 0;
    let mut k = 0;
    while k < n {
        let mut e = k + 1;
        while e < n && (lam[e] - lam[k]).abs() <= 1e-8 * scale {
            e += 1;
        }
        let mult = e - k;
        let mu = lam[k..e].iter().sum::<f64>() / mult as f64;
        let shifted = a - DMatrix::identity(n, n) * mu;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.ok_or(DiscError::NotDiagonalizable(mu))?;
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]));
        for &s in idx.iter().take(mult) {
            if svd.singular_values[s] > 1e-6 * scale {
                return Err(DiscError::NotDiagonalizable(mu));
            }
            r.set_column(col, &vt.row(s).transpose());
            col += 1;
        }
        for x in &mut lam[k..e] {
            *x = mu;
        }
        k = e;
    }
    normalize_columns(&mut r);
    let rinv = r.clone().try_inverse().ok_or(DiscError::NotDiagonalizable(0.0))?;
    let rabs = DMatrix::from_fn(n, n, |i, c| r[(i, c)] * lam[c].abs());
    Ok((lam, r.clone(), rabs * rinv))
}

fn normalize_columns(r: &mut DMatrix<f64>) {
    for mut c in r.column_iter_mut() {
        let norm = c.norm();
        let lead = c.iter().copied().find(|x| x.abs() > 1e-12 * norm).unwrap_or(1.0);
        c /= norm * lead.signum();
    }
}
