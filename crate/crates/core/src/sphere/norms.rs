use num_complex::Complex64;

use super::{eigenvalue, GridField, SpectralField, SpectralTransform, SphereQuadrature};
use crate::error::{Error, Result};

/// `‖f‖_{H^s} = (Σ λ_n^{2s} |c_{n,k}|²)^{1/2}` with `λ_n = √(n² + n + 1)`.
pub fn sobolev_norm(f: &SpectralField, s: f64) -> f64 {
    (0..=f.cutoff())
        .map(|n| eigenvalue(n).0.powf(2.0 * s) * f.shell_norm_sq(n))
        .sum::<f64>()
        .sqrt()
}

/// `L^p` norm of grid samples under the quadrature measure; for
/// `p = ∞` the grid maximum (an approximation of the true supremum).
pub fn lp_norm(g: &GridField, p: f64, q: &SphereQuadrature) -> Result<f64> {
    if g.values.len() != q.node_count() {
        return Err(Error::GridMismatch {
            expected: q.node_count(),
            found: g.values.len(),
        });
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!("L^p exponent {p} < 1")));
    }
    if p.is_infinite() {
        return Ok(g.max_abs());
    }
    let inv_la = 1.0 / q.azimuth_count() as f64;
    let mut acc = 0.0;
    for i in 0..q.polar_count() {
        let ring: f64 = g.ring(i).iter().map(|v| v.norm().powf(p)).sum();
        acc += q.polar_weight(i) * inv_la * ring;
    }
    Ok(acc.powf(1.0 / p))
}

/// Grid supremum of `|f|` on a rule exact to degree `factor · cutoff`
/// (`factor = 4` is the usual choice). Approximate from below.
pub fn sup_norm_oversampled(f: &SpectralField, factor: usize) -> Result<f64> {
    let t = SpectralTransform::for_cutoff(f.cutoff(), factor);
    Ok(t.synthesize(f)?.max_abs())
}

/// `‖φ_n‖²_{L²}` for the highest-weight harmonic `φ_n = (x₁ + i x₂)^n`,
/// i.e. `∫₀¹ (1 − x²)^n dx = Π_{i≤n} 2i/(2i+1)`.
pub fn highest_weight_norm_sq(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * (2 * i) as f64 / (2 * i + 1) as f64)
}

/// `φ_n = (x₁ + i x₂)^n` expanded in the real basis.
///
/// With `Q_n^n = c_n sin^n θ`, `φ_n = (b_{n,n} + i b_{n,−n}) / (√2 c_n)`.
/// This representation depends on the basis convention of this crate.
pub fn highest_weight_field(n: usize) -> SpectralField {
    let c_sq = 1.0 / highest_weight_norm_sq(n);
    let amp = 1.0 / (2.0 * c_sq).sqrt();
    let mut f = SpectralField::zeros(n);
    if n == 0 {
        f.set(0, 0, Complex64::new(1.0, 0.0));
        return f;
    }
    f.set(n, n as i64, Complex64::new(amp, 0.0));
    f.set(n, -(n as i64), Complex64::new(0.0, amp));
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{synthesize, ModeIndex};

    #[test]
    fn constant_mode_has_unit_sobolev_norm() {
        let f = SpectralField::mode(4, ModeIndex { n: 0, k: 0 });
        for s in [-2.0, 0.0, 0.7, 3.0] {
            assert!((sobolev_norm(&f, s) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn degree_one_highest_weight_norm() {
        assert!((highest_weight_norm_sq(1) - 2.0 / 3.0).abs() < 1e-15);
        // Wallis integral by quadrature, independent of the product formula
        let q = SphereQuadrature::with_exact_degree(2);
        let w = q.integrate_polar(|_, s| s * s);
        assert!((w - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn highest_weight_field_matches_pointwise_formula() {
        let n = 7;
        let f = highest_weight_field(n);
        let q = SphereQuadrature::for_cutoff(n, 2);
        let g = synthesize(&f, &q).unwrap();
        for i in 0..q.polar_count() {
            for j in 0..q.azimuth_count() {
                let p = q.point(i, j);
                let [x1, x2, _] = p.to_cartesian();
                let expect = Complex64::new(x1, x2).powu(n as u32);
                assert!((g.values[i * q.azimuth_count() + j] - expect).norm() < 1e-12);
            }
        }
        assert!((f.norm_sq() - highest_weight_norm_sq(n)).abs() < 1e-14);
    }

    #[test]
    fn highest_weight_norm_matches_quadrature() {
        for n in [3usize, 40, 300] {
            let q = SphereQuadrature::with_exact_degree(2 * n);
            let quad = q.integrate_polar(|_, s| s.powi(2 * n as i32));
            let prod = highest_weight_norm_sq(n);
            assert!((quad - prod).abs() < 1e-12 * prod.max(1e-300) + 1e-15, "n={n}");
        }
    }

    #[test]
    fn parseval_on_exact_grid() {
        let f = highest_weight_field(9);
        let q = SphereQuadrature::for_cutoff(9, 2);
        let g = synthesize(&f, &q).unwrap();
        let l2 = lp_norm(&g, 2.0, &q).unwrap();
        assert!((l2 * l2 - f.norm_sq()).abs() < 1e-12);
    }

    #[test]
    fn rejects_sub_unit_exponent() {
        let q = SphereQuadrature::with_exact_degree(2);
        let g = GridField::zeros(q.polar_count(), q.azimuth_count());
        assert!(lp_norm(&g, 0.5, &q).is_err());
        assert_eq!(lp_norm(&g, f64::INFINITY, &q).unwrap(), 0.0);
    }
}
