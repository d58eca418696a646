//! One-dimensional Gauss–Legendre rules and an adaptive integrator.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule, exact for polynomials of degree `2n - 1`.
    ///
    /// Nodes are found by Newton iteration on the three-term recurrence,
    /// started from Tricomi's asymptotic guess.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let theta = PI * (i as f64 + 0.75) / (nf + 0.5);
            let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
            let mut deriv = 0.0;
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                deriv = dp;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    let (_, dp) = legendre_with_derivative(n, x);
                    deriv = dp;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<T, F>(&self, a: f64, b: f64, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }
}

/// Legendre polynomial `P_n(x)` and its derivative.
pub fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Adaptive bisection driven by a 20-point Gauss–Legendre rule.
///
/// A panel is accepted when the one-panel and two-half-panel estimates
/// agree to `abs_tol` scaled by the panel's share of the interval.
pub struct AdaptiveIntegrator {
    rule: GaussLegendre,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl AdaptiveIntegrator {
    pub fn new(abs_tol: f64) -> Self {
        Self {
            rule: GaussLegendre::new(20),
            abs_tol,
            max_depth: 40,
        }
    }

    pub fn integrate<F>(&self, a: f64, b: f64, f: F) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let whole = self.rule.integrate(a, b, &f);
        self.refine(a, b, whole, &f, 0, b - a)
    }

    fn refine<F>(
        &self,
        a: f64,
        b: f64,
        whole: Complex64,
        f: &F,
        depth: u32,
        span: f64,
    ) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let mid = 0.5 * (a + b);
        let left = self.rule.integrate(a, mid, f);
        let right = self.rule.integrate(mid, b, f);
        let split = left + right;
        let budget = self.abs_tol * ((b - a) / span).max(1e-3);
        if (split - whole).norm() <= budget {
            return Ok(split);
        }
        if depth >= self.max_depth {
            return Err(Error::Quadrature(format!(
                "no convergence on [{a}, {b}] after {depth} bisections"
            )));
        }
        Ok(self.refine(a, mid, left, f, depth + 1, span)?
            + self.refine(mid, b, right, f, depth + 1, span)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_rule_is_exact() {
        for n in [1, 2, 5, 16, 101, 700] {
            let gl = GaussLegendre::new(n);
            let sum: f64 = gl.weights.iter().sum();
            assert!((sum - 2.0).abs() < 1e-12, "n={n} sum={sum}");
            // x^{2n-2} integrates to 2/(2n-1)
            let d = 2 * n - 2;
            let v: f64 = gl.integrate(-1.0, 1.0, |x| x.powi(d as i32));
            assert!((v - 2.0 / (d as f64 + 1.0)).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        let gl = GaussLegendre::new(33);
        for w in gl.nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        for i in 0..33 {
            assert!((gl.nodes[i] + gl.nodes[32 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn adaptive_handles_oscillation() {
        let integ = AdaptiveIntegrator::new(1e-12);
        let k = 200.0;
        let v = integ
            .integrate(0.0, 1.0, |x| Complex64::from_polar(1.0, k * x))
            .unwrap();
        let exact = (Complex64::from_polar(1.0, k) - 1.0) / Complex64::new(0.0, k);
        assert!((v - exact).norm() < 1e-11);
    }
}
