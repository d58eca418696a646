use super::{legendre, SphereQuadrature};

/// `‖φ‖_{L^p}/‖φ‖_{L²}` for the two extremal members of the eigenspace
/// `E_n`: the highest-weight harmonic and the zonal harmonic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoggeRatios {
    pub highest_weight: f64,
    pub zonal: f64,
    /// True when the polar rule integrates `|φ|^p` exactly for both
    /// families (`p` an even integer and polar degree `≥ p · n`).
    pub exact: bool,
}

impl SoggeRatios {
    pub fn max(&self) -> f64 {
        self.highest_weight.max(self.zonal)
    }
}

/// Both moduli are axisymmetric, so only the polar rule of `q` is used.
pub fn sogge_sharpness(n: usize, p: f64, q: &SphereQuadrature) -> SoggeRatios {
    let even_integer = p.fract() == 0.0 && (p as u64).is_multiple_of(2);
    let exact = even_integer && q.polar_exact_degree() as f64 >= p * n as f64;

    let nf = n as f64;
    let hw_p = q.integrate_polar(|_, s| s.powf(nf * p));
    let hw_2 = q.integrate_polar(|_, s| s.powf(2.0 * nf));
    let highest_weight = hw_p.powf(1.0 / p) / hw_2.sqrt();

    let (mut z_p, mut z_2) = (0.0, 0.0);
    for (i, (&x, &s)) in q.cos_nodes().iter().zip(q.sin_nodes()).enumerate() {
        let v = legendre::value(n, 0, x, s).abs();
        z_p += q.polar_weight(i) * v.powf(p);
        z_2 += q.polar_weight(i) * v * v;
    }
    let zonal = z_p.powf(1.0 / p) / z_2.sqrt();

    SoggeRatios {
        highest_weight,
        zonal,
        exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_two_ratios_are_one() {
        let q = SphereQuadrature::with_exact_degree(80);
        let r = sogge_sharpness(40, 2.0, &q);
        assert!((r.highest_weight - 1.0).abs() < 1e-12);
        assert!((r.zonal - 1.0).abs() < 1e-12);
        assert!(r.exact);
    }

    #[test]
    fn inexact_rules_are_flagged() {
        let q = SphereQuadrature::with_exact_degree(100);
        assert!(!sogge_sharpness(40, 4.0, &q).exact);
        assert!(!sogge_sharpness(10, 3.0, &q).exact);
        assert!(sogge_sharpness(25, 4.0, &q).exact);
    }
}
