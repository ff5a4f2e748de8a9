//! Gauss rules built with the Golub-Welsch algorithm.

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::gamma;

/// Nodes and weights of a one-dimensional quadrature rule.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Gauss rule from the three-term recurrence `sqrt(b_{k+1}) p_{k+1} = (x - a_k) p_k - sqrt(b_k) p_{k-1}`.
/// Eigenvalues of the Jacobi matrix seed the nodes, a few Newton steps on `p_n` polish them,
/// and the Christoffel numbers `1 / sum p_k^2` give the weights.
fn gauss_rule<A, B>(n: usize, a: A, sqrt_b: B, mu0: f64) -> Rule
where
    A: Fn(usize) -> f64,
    B: Fn(usize) -> f64,
{
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jac[(i, i)] = a(i);
        if i + 1 < n {
            jac[(i, i + 1)] = sqrt_b(i + 1);
            jac[(i + 1, i)] = sqrt_b(i + 1);
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    // orthonormal values p_0..p_n and derivative of p_n
    let eval = |x: f64| -> (f64, f64, f64) {
        let mut p_prev = 0.0;
        let mut p = 1.0 / mu0.sqrt();
        let mut d_prev = 0.0;
        let mut d = 0.0;
        let mut sum = p * p;
        for k in 0..n {
            let sb = sqrt_b(k + 1);
            let sb_k = if k == 0 { 0.0 } else { sqrt_b(k) };
            let p_next = ((x - a(k)) * p - sb_k * p_prev) / sb;
            let d_next = (p + (x - a(k)) * d - sb_k * d_prev) / sb;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
            if k + 1 < n {
                sum += p * p;
            }
        }
        (p, d, sum)
    };
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, d, _) = eval(*x);
            if d != 0.0 {
                *x -= p / d;
            }
        }
        weights.push(1.0 / eval(*x).2);
    }
    Rule { nodes, weights }
}

/// Gauss-Hermite rule for the standard normal density: `sum w f(x) ~ int f(v) exp(-v^2/2)/sqrt(2 pi) dv`.
pub fn gauss_hermite(n: usize) -> Rule {
    gauss_rule(n, |_| 0.0, |k| (k as f64).sqrt(), 1.0)
}

/// Generalized Gauss-Laguerre rule for the weight `s^alpha exp(-s)` on `(0, inf)`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Rule {
    gauss_rule(
        n,
        |k| 2.0 * k as f64 + alpha + 1.0,
        |k| ((k as f64) * (k as f64 + alpha)).sqrt(),
        gamma(alpha + 1.0),
    )
}

/// Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Rule {
    gauss_rule(
        n,
        |_| 0.0,
        |k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        },
        2.0,
    )
}

/// Half-range integrals `int_0^inf g(v) exp(-v^2/2)/sqrt(2 pi) dv`, exact for polynomial `g`
/// up to degree about `2n`, by splitting `g` into even and odd parts.
#[derive(Debug, Clone)]
pub struct HalfRange {
    even: Rule,
    odd: Rule,
}

impl HalfRange {
    pub fn new(n: usize) -> Self {
        // even part: v = sqrt(2s), dv = ds / sqrt(2s)  -> s^{-1/2} e^{-s} / sqrt(2)
        // odd part: v dv = ds                         -> e^{-s}, integrand g_o(v)/v
        let inv = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        let mut even = gauss_laguerre(n, -0.5);
        for (x, w) in even.nodes.iter_mut().zip(even.weights.iter_mut()) {
            *x = (2.0 * *x).sqrt();
            *w *= inv / std::f64::consts::SQRT_2;
        }
        let mut odd = gauss_laguerre(n, 0.0);
        for (x, w) in odd.nodes.iter_mut().zip(odd.weights.iter_mut()) {
            *x = (2.0 * *x).sqrt();
            *w *= inv / *x;
        }
        HalfRange { even, odd }
    }

    /// Rule for integrands that are even in `v`: returns positive nodes.
    pub fn even_rule(&self) -> &Rule {
        &self.even
    }

    /// Rule for integrands that are odd in `v` (the weights absorb the factor `1/v`).
    pub fn odd_rule(&self) -> &Rule {
        &self.odd
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        let e = self.even.integrate(|v| 0.5 * (g(v) + g(-v)));
        let o = self.odd.integrate(|v| 0.5 * (g(v) - g(-v)));
        e + o
    }
}

/// Gauss rule for the half-range Maxwellian `exp(-v^2/2)/sqrt(2 pi)` on `(0, inf)`, exact for
/// polynomials of degree `< 2n`. The recurrence comes from a discretized Stieltjes procedure on
/// composite Gauss-Legendre panels covering `[0, 24]`.
pub fn maxwell_half_range(n: usize) -> Rule {
    let panel = gauss_legendre(40);
    let (panels, len) = (24, 1.0);
    let inv = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let mut x = Vec::with_capacity(panels * panel.len());
    let mut w = Vec::with_capacity(panels * panel.len());
    for p in 0..panels {
        let lo = p as f64 * len;
        for (t, wt) in panel.nodes.iter().zip(&panel.weights) {
            let v = lo + 0.5 * len * (t + 1.0);
            x.push(v);
            w.push(0.5 * len * wt * inv * (-0.5 * v * v).exp());
        }
    }
    let mu0 = 0.5;
    // orthonormal Stieltjes: keeps the discrete values bounded
    let mut a = vec![0.0; n];
    let mut sb = vec![0.0; n + 1];
    let mut q_prev = vec![0.0; x.len()];
    let mut q = vec![1.0 / f64::sqrt(mu0); x.len()];
    for k in 0..n {
        a[k] = (0..x.len()).map(|i| w[i] * x[i] * q[i] * q[i]).sum();
        let r: Vec<f64> = (0..x.len()).map(|i| (x[i] - a[k]) * q[i] - sb[k] * q_prev[i]).collect();
        sb[k + 1] = (0..x.len()).map(|i| w[i] * r[i] * r[i]).sum::<f64>().sqrt();
        q_prev = q;
        q = r.iter().map(|v| v / sb[k + 1]).collect();
    }
    gauss_rule(n, |k| a[k], |k| sb[k], mu0)
}

/// Closed-form half moments `int_0^inf v^k exp(-v^2/2)/sqrt(2 pi) dv`.
pub fn half_moment(k: u32) -> f64 {
    // 2^{(k-1)/2} Gamma((k+1)/2) / sqrt(2 pi)
    let k = k as f64;
    2f64.powf((k - 1.0) / 2.0) * gamma((k + 1.0) / 2.0) / (2.0 * std::f64::consts::PI).sqrt()
}
