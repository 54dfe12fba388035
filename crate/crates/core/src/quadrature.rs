//! Gauss rules in `f64` for the function-space model.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::linalg::tridiagonal_eigen;
use crate::special::ln_gamma_real;

/// Nodes and weights with `Σ w_j f(x_j) ≈ ∫ f`.
#[derive(Debug, Clone, PartialEq)]
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
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }
}

/// Gauss–Legendre on `[−1, 1]`, Newton iteration from Chebyshev guesses.
pub fn gauss_legendre(n: usize) -> Result<Rule> {
    if n == 0 {
        return Err(invalid("a Gauss rule needs at least one node"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for j in 0..n.div_ceil(2) {
        let mut x = (PI * (j as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                dp = legendre_with_derivative(n, x).1;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[j] = -x;
        nodes[n - 1 - j] = x;
        weights[j] = w;
        weights[n - 1 - j] = w;
    }
    Ok(Rule { nodes, weights })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for m in 2..=n {
        let mf = m as f64;
        let p2 = ((2.0 * mf - 1.0) * x * p1 - (mf - 1.0) * p0) / mf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Generalized Gauss–Laguerre for the weight `s^α e^{−s}` on `(0, ∞)`.
///
/// Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix of the
/// Laguerre recurrence, weights `Γ(α+1) q_{0j}²`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<Rule> {
    if n == 0 {
        return Err(invalid("a Gauss rule needs at least one node"));
    }
    if !(alpha > -1.0) {
        return Err(invalid(format!(
            "Laguerre weight needs α > −1, got {alpha}"
        )));
    }
    let diag: Vec<f64> = (0..n).map(|j| 2.0 * j as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n)
        .map(|j| (j as f64 * (j as f64 + alpha)).sqrt())
        .collect();
    let eig = tridiagonal_eigen(&diag, &off, 1)?;
    let mass = ln_gamma_real(alpha + 1.0).exp();
    let weights = eig.vectors[0].iter().map(|q| mass * q * q).collect();
    Ok(Rule {
        nodes: eig.values,
        weights,
    })
}

/// Composite Gauss–Legendre on `[a, b]` with `panels` equal panels.
pub fn composite_legendre(a: f64, b: f64, panels: usize, per_panel: usize) -> Result<Rule> {
    if panels == 0 || !(b > a) {
        return Err(invalid("composite rule needs b > a and at least one panel"));
    }
    let base = gauss_legendre(per_panel)?;
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * per_panel);
    let mut weights = Vec::with_capacity(panels * per_panel);
    for j in 0..panels {
        let mid = a + (j as f64 + 0.5) * h;
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    Ok(Rule { nodes, weights })
}

/// Equispaced angles `2πj/m` with weights `2π/m`; exact for trigonometric
/// polynomials of degree below `m`.
pub fn trapezoid_circle(m: usize) -> Result<Rule> {
    if m == 0 {
        return Err(invalid("angular rule needs at least one node"));
    }
    let h = 2.0 * PI / m as f64;
    Ok(Rule {
        nodes: (0..m).map(|j| j as f64 * h).collect(),
        weights: vec![h; m],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(5).unwrap();
        assert!((r.integrate(|x| x.powi(8)) - 2.0 / 9.0).abs() < 1e-15);
        assert!((r.integrate(|_| 1.0) - 2.0).abs() < 1e-15);
        assert!(r.integrate(|x| x.powi(7)).abs() < 1e-15);
    }

    #[test]
    fn laguerre_moments() {
        // ∫ s^α e^{−s} s^j ds = Γ(α+j+1)
        for alpha in [0.0, 0.5, 3.0] {
            let r = gauss_laguerre(12, alpha).unwrap();
            for j in 0..10 {
                let want = ln_gamma_real(alpha + j as f64 + 1.0).exp();
                let got = r.integrate(|s| s.powi(j));
                assert!((got / want - 1.0).abs() < 1e-12, "α = {alpha}, j = {j}");
            }
        }
    }

    #[test]
    fn composite_handles_gaussian() {
        let r = composite_legendre(-10.0, 10.0, 20, 10).unwrap();
        assert!((r.integrate(|x| (-x * x).exp()) - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn circle_rule_orthogonality() {
        let r = trapezoid_circle(16).unwrap();
        assert!(r.integrate(|p| (3.0 * p).cos()).abs() < 1e-14);
        assert!((r.integrate(|p| (3.0 * p).cos().powi(2)) - PI).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gauss_laguerre(4, -1.0).is_err());
        assert!(gauss_legendre(0).is_err());
        assert!(composite_legendre(1.0, 0.0, 2, 2).is_err());
    }
}
