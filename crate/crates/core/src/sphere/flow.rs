use num_complex::Complex64;

use super::{eigenvalue, SpectralField};

/// Which spectral phase the linear propagator applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseConvention {
    /// `c_{n,k} ↦ e^{i t n(n+1)} c_{n,k}`, the convention used for the
    /// highest-weight counterexample.
    Laplace,
    /// `c_{n,k} ↦ e^{−i t λ_n²} c_{n,k}`, i.e. the group `e^{it(Δ − 1)}`.
    Shifted,
}

impl PhaseConvention {
    /// Angular frequency of degree `n`: the phase is `e^{i t ω_n}`.
    pub fn frequency(self, n: usize) -> f64 {
        let (lambda, laplace) = eigenvalue(n);
        match self {
            Self::Laplace => laplace,
            Self::Shifted => -lambda * lambda,
        }
    }
}

/// Applies the linear Schrödinger group for time `t`.
pub fn linear_flow(f: &SpectralField, t: f64, convention: PhaseConvention) -> SpectralField {
    let mut out = f.clone();
    for n in 0..=f.cutoff() {
        let phase = Complex64::from_polar(1.0, t * convention.frequency(n));
        out.shell_mut(n).iter_mut().for_each(|c| *c *= phase);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::ModeIndex;

    #[test]
    fn zero_time_is_identity() {
        let mut f = SpectralField::zeros(5);
        f.set(3, -2, Complex64::new(0.2, -1.0));
        f.set(5, 5, Complex64::new(1.5, 0.5));
        for conv in [PhaseConvention::Laplace, PhaseConvention::Shifted] {
            assert_eq!(linear_flow(&f, 0.0, conv), f);
        }
    }

    #[test]
    fn degree_one_laplace_phase() {
        for k in -1..=1 {
            let f = SpectralField::mode(2, ModeIndex { n: 1, k });
            let t = 0.37;
            let g = linear_flow(&f, t, PhaseConvention::Laplace);
            let expect = Complex64::from_polar(1.0, 2.0 * t);
            assert!((g.get(1, k) - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn shifted_phase_uses_lambda_squared() {
        let f = SpectralField::mode(3, ModeIndex { n: 3, k: 1 });
        let g = linear_flow(&f, 0.1, PhaseConvention::Shifted);
        let expect = Complex64::from_polar(1.0, -0.1 * 13.0);
        assert!((g.get(3, 1) - expect).norm() < 1e-15);
    }
}
