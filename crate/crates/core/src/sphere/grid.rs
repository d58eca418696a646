use std::f64::consts::TAU;

use super::SpherePoint;
use crate::quadrature::GaussLegendre;

/// Product rule on the sphere: Gauss–Legendre in `cos θ` times a uniform
/// azimuthal rule. Weights are normalised to total mass one.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    polar: GaussLegendre,
    sin: Vec<f64>,
    azimuth_count: usize,
}

impl SphereQuadrature {
    pub fn new(polar_count: usize, azimuth_count: usize) -> Self {
        assert!(polar_count > 0 && azimuth_count > 0);
        let polar = GaussLegendre::new(polar_count);
        let sin = polar
            .nodes
            .iter()
            .map(|&x| ((1.0 - x) * (1.0 + x)).sqrt())
            .collect();
        Self {
            polar,
            sin,
            azimuth_count,
        }
    }

    /// Smallest product rule integrating every spherical polynomial of
    /// degree `≤ degree` exactly.
    pub fn with_exact_degree(degree: usize) -> Self {
        Self::new(degree / 2 + 1, degree + 1)
    }

    /// Rule exact to degree `factor · cutoff`, e.g. `factor = 2` for
    /// transforms and `factor = 4` for cubic products.
    pub fn for_cutoff(cutoff: usize, factor: usize) -> Self {
        Self::with_exact_degree(factor * cutoff.max(1))
    }

    /// Largest total degree integrated exactly: `min(2 L_p − 1, L_a − 1)`.
    pub fn exact_degree(&self) -> usize {
        (2 * self.polar.len() - 1).min(self.azimuth_count - 1)
    }

    pub fn polar_exact_degree(&self) -> usize {
        2 * self.polar.len() - 1
    }

    pub fn polar_count(&self) -> usize {
        self.polar.len()
    }

    pub fn azimuth_count(&self) -> usize {
        self.azimuth_count
    }

    pub fn node_count(&self) -> usize {
        self.polar.len() * self.azimuth_count
    }

    /// `cos θ_i`, increasing.
    pub fn cos_nodes(&self) -> &[f64] {
        &self.polar.nodes
    }

    pub fn sin_nodes(&self) -> &[f64] {
        &self.sin
    }

    /// Polar weights normalised to sum to one (`w_i / 2`).
    pub fn polar_weight(&self, i: usize) -> f64 {
        0.5 * self.polar.weights[i]
    }

    pub fn azimuth(&self, j: usize) -> f64 {
        TAU * j as f64 / self.azimuth_count as f64
    }

    pub fn point(&self, i: usize, j: usize) -> SpherePoint {
        SpherePoint::new(self.polar.nodes[i].acos(), self.azimuth(j))
    }

    /// Weight of every node in ring-major order; sums to one.
    pub fn node_weights(&self) -> Vec<f64> {
        let inv = 1.0 / self.azimuth_count as f64;
        (0..self.polar.len())
            .flat_map(|i| std::iter::repeat_n(self.polar_weight(i) * inv, self.azimuth_count))
            .collect()
    }

    /// `½ Σ_i w_i f(cos θ_i, sin θ_i)`: integral of an axisymmetric function.
    pub fn integrate_polar(&self, mut f: impl FnMut(f64, f64) -> f64) -> f64 {
        self.polar
            .nodes
            .iter()
            .zip(&self.sin)
            .zip(&self.polar.weights)
            .map(|((&x, &s), &w)| 0.5 * w * f(x, s))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_one() {
        for d in [0, 3, 16, 65] {
            let q = SphereQuadrature::with_exact_degree(d);
            let s: f64 = q.node_weights().iter().sum();
            assert!((s - 1.0).abs() < 1e-13);
            assert!(q.exact_degree() >= d);
            assert!(q.polar_exact_degree() >= 2 * q.polar_count() - 1);
        }
    }

    #[test]
    fn integrates_low_moments() {
        // mean of z² over the sphere is 1/3
        let q = SphereQuadrature::with_exact_degree(4);
        let v = q.integrate_polar(|x, _| x * x);
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }
}
