use num_complex::Complex64;

use super::GaussianStream;
use crate::error::{invalid, Result};
use crate::sphere::{basis_values, eigenvalue, ModeIndex, SpectralField, SpherePoint};

/// Parameters of the random field `φ = Σ_n λ_n^{−α} Σ_k g_{n,k} b_{n,k}`
/// truncated at degree `cutoff`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomDataSpec {
    pub alpha: f64,
    pub cutoff: usize,
    pub seed: u64,
}

impl RandomDataSpec {
    pub fn new(alpha: f64, cutoff: usize, seed: u64) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return invalid(format!("α = {alpha} must be finite and greater than 1"));
        }
        Ok(Self {
            alpha,
            cutoff,
            seed,
        })
    }

    /// `E‖φ‖²_{L²} = Σ_{n ≤ cutoff} λ_n^{−2α}(2n + 1)`.
    pub fn expected_mass(&self) -> f64 {
        (0..=self.cutoff)
            .map(|n| eigenvalue(n).0.powf(-2.0 * self.alpha) * (2 * n + 1) as f64)
            .sum()
    }
}

/// Draw number `sample` of the random field.
pub fn sample_data_at(spec: &RandomDataSpec, sample: u64) -> SpectralField {
    let mut field = SpectralField::zeros(spec.cutoff);
    let mut stream = GaussianStream::new(spec.seed, sample);
    stream.seek(0);
    for n in 0..=spec.cutoff {
        let weight = eigenvalue(n).0.powf(-spec.alpha);
        for c in field.shell_mut(n) {
            *c = weight * stream.next_gaussian();
        }
    }
    field
}

/// The field for sample index 0.
pub fn sample_data(spec: &RandomDataSpec) -> SpectralField {
    sample_data_at(spec, 0)
}

/// Degrees `n` with `N/2 < λ_n ≤ N`; for `N = 1` this is `{0}`.
pub fn dyadic_shell(big_n: usize) -> std::ops::RangeInclusive<usize> {
    assert!(big_n >= 1, "dyadic shells start at N = 1");
    let lo = (0..big_n).find(|&n| 2.0 * eigenvalue(n).0 > big_n as f64).unwrap_or(big_n);
    let hi = (0..=big_n).rev().find(|&n| eigenvalue(n).0 <= big_n as f64).unwrap_or(0);
    lo..=hi
}

/// `P_N φ` for the λ-dyadic shell `N/2 < λ_n ≤ N`.
pub fn project_shell(f: &SpectralField, big_n: usize) -> SpectralField {
    let shell = dyadic_shell(big_n);
    f.truncate((*shell.end()).min(f.cutoff()))
        .filter_shells(|n| shell.contains(&n))
}

/// `e_n^ω = (2n+1)^{−1/2} Σ_k g_{n,k} b_{n,k}` on a single degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellFunction {
    pub degree: usize,
    pub gaussians: Vec<Complex64>,
}

impl ShellFunction {
    /// The Gaussians of mode shell `degree` in sample `sample`.
    pub fn sample(degree: usize, seed: u64, sample: u64) -> Self {
        let mut stream = GaussianStream::new(seed, sample);
        stream.seek_mode(ModeIndex { n: degree, k: -(degree as i64) });
        let mut gaussians = vec![Complex64::new(0.0, 0.0); 2 * degree + 1];
        stream.fill(&mut gaussians);
        Self { degree, gaussians }
    }

    pub fn eval_with(&self, basis: &[f64]) -> Complex64 {
        let norm = ((2 * self.degree + 1) as f64).sqrt();
        self.gaussians
            .iter()
            .zip(basis)
            .map(|(g, b)| g * b)
            .sum::<Complex64>()
            / norm
    }

    pub fn eval(&self, x: SpherePoint) -> Result<Complex64> {
        Ok(self.eval_with(&basis_values(self.degree, x)?))
    }

    pub fn to_field(&self) -> SpectralField {
        let mut f = SpectralField::zeros(self.degree);
        let norm = ((2 * self.degree + 1) as f64).sqrt();
        for (c, g) in f.shell_mut(self.degree).iter_mut().zip(&self.gaussians) {
            *c = g / norm;
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let spec = RandomDataSpec::new(1.5, 32, 9).unwrap();
        let a = sample_data(&spec);
        let b = sample_data(&spec);
        assert_eq!(a.coeffs(), b.coeffs());
        let other = sample_data(&RandomDataSpec { seed: 10, ..spec });
        assert_ne!(a.coeffs(), other.coeffs());
    }

    #[test]
    fn truncations_share_coefficients() {
        let big = sample_data(&RandomDataSpec::new(1.5, 32, 9).unwrap());
        let small = sample_data(&RandomDataSpec::new(1.5, 8, 9).unwrap());
        assert_eq!(big.truncate(8).coeffs(), small.coeffs());
    }

    #[test]
    fn rejects_small_alpha() {
        assert!(RandomDataSpec::new(1.0, 8, 0).is_err());
        assert!(RandomDataSpec::new(f64::NAN, 8, 0).is_err());
    }

    #[test]
    fn shells_partition_degrees() {
        assert_eq!(dyadic_shell(1), 0..=0);
        assert_eq!(dyadic_shell(2), 1..=1);
        assert_eq!(dyadic_shell(8), 4..=7);
        let mut next = 0;
        for k in 0..10 {
            let s = dyadic_shell(1 << k);
            assert_eq!(*s.start(), next);
            next = s.end() + 1;
        }
    }

    #[test]
    fn shell_function_matches_field_gaussians() {
        let spec = RandomDataSpec::new(2.0, 12, 5).unwrap();
        let f = sample_data_at(&spec, 3);
        let shell = ShellFunction::sample(7, 5, 3);
        let w = eigenvalue(7).0.powf(-2.0) / 15f64.sqrt();
        for (c, g) in f.shell(7).iter().zip(shell.to_field().shell(7)) {
            assert!((c - g * (w * 15.0)).norm() < 1e-12 * c.norm().max(1e-300) + 1e-15);
        }
    }
}
