use num_complex::Complex64;

use super::{evolve, EvolutionConfig, TruncatedState};
use crate::error::{invalid, Result};
use crate::sphere::SpectralField;

/// `u_N(T)` evolved at cutoff `N` from `P_{≤N} φ`.
pub fn truncated_solution(phi: &SpectralField, cutoff: usize, cfg: &EvolutionConfig) -> Result<SpectralField> {
    if cutoff > phi.cutoff() {
        return invalid(format!(
            "cutoff {cutoff} exceeds the data cutoff {}",
            phi.cutoff()
        ));
    }
    let u0 = TruncatedState::initial(phi.truncate(cutoff));
    Ok(evolve(&u0, cfg)?.last().field.clone())
}

/// `v_N = u_N − u_{N/2}` at the final time of `cfg`, with `u_{N/2}`
/// zero-padded to cutoff `N`.
pub fn dyadic_increment(phi: &SpectralField, cutoff: usize, cfg: &EvolutionConfig) -> Result<SpectralField> {
    if cutoff < 2 || !cutoff.is_power_of_two() {
        return invalid(format!("dyadic cutoff must be a power of two ≥ 2, got {cutoff}"));
    }
    let fine = truncated_solution(phi, cutoff, cfg)?;
    let coarse = truncated_solution(phi, cutoff / 2, cfg)?.truncate(cutoff);
    fine.sub(&coarse)
}

/// Increments `v_1 = u_1, v_2, v_4, …, v_N`, all padded to cutoff `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicDecomposition {
    pub cutoffs: Vec<usize>,
    pub increments: Vec<SpectralField>,
}

impl DyadicDecomposition {
    pub fn sum(&self) -> Result<SpectralField> {
        let mut acc = SpectralField::zeros(*self.cutoffs.last().unwrap_or(&0));
        for v in &self.increments {
            acc.axpy(Complex64::new(1.0, 0.0), v)?;
        }
        Ok(acc)
    }

    /// `‖v_L‖_{L²}` for each dyadic `L`.
    pub fn norms(&self) -> Vec<f64> {
        self.increments.iter().map(|v| v.norm_sq().sqrt()).collect()
    }
}

/// Evolves every dyadic truncation once and forms consecutive differences,
/// so that `Σ_L v_L = u_N` telescopes.
pub fn dyadic_decomposition(
    phi: &SpectralField,
    cutoff: usize,
    cfg: &EvolutionConfig,
) -> Result<DyadicDecomposition> {
    if cutoff < 1 || !cutoff.is_power_of_two() {
        return invalid(format!("dyadic cutoff must be a power of two, got {cutoff}"));
    }
    let cutoffs: Vec<usize> = (0..=cutoff.trailing_zeros()).map(|k| 1 << k).collect();
    let solutions: Vec<SpectralField> = cutoffs
        .iter()
        .map(|&l| Ok(truncated_solution(phi, l, cfg)?.truncate(cutoff)))
        .collect::<Result<_>>()?;
    let mut increments = Vec::with_capacity(cutoffs.len());
    increments.push(solutions[0].clone());
    for pair in solutions.windows(2) {
        increments.push(pair[1].sub(&pair[0])?);
    }
    Ok(DyadicDecomposition { cutoffs, increments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randomization::{sample_data_at, RandomDataSpec};

    fn cfg() -> EvolutionConfig {
        EvolutionConfig {
            dt: 2e-3,
            final_time: 0.1,
            ..Default::default()
        }
    }

    #[test]
    fn telescoping_is_exact() {
        let phi = sample_data_at(&RandomDataSpec::new(1.5, 16, 3).unwrap(), 0);
        let d = dyadic_decomposition(&phi, 16, &cfg()).unwrap();
        assert_eq!(d.cutoffs, vec![1, 2, 4, 8, 16]);
        let u16 = truncated_solution(&phi, 16, &cfg()).unwrap();
        assert!(d.sum().unwrap().max_abs_diff(&u16).unwrap() < 1e-14);
        let v16 = dyadic_increment(&phi, 16, &cfg()).unwrap();
        assert_eq!(&v16, d.increments.last().unwrap());
    }

    #[test]
    fn low_frequency_data_still_leaks() {
        // identical data, but u_8 is not projected to degree 4
        let phi = sample_data_at(&RandomDataSpec::new(1.5, 8, 1).unwrap(), 0).truncate(4).truncate(8);
        let v = dyadic_increment(&phi, 8, &cfg()).unwrap();
        let size = v.norm_sq().sqrt();
        assert!(size > 1e-8 && size < 0.1 * phi.norm_sq().sqrt(), "{size}");
    }

    #[test]
    fn non_dyadic_cutoff_rejected() {
        let phi = SpectralField::zeros(12);
        assert!(dyadic_increment(&phi, 6, &cfg()).is_err());
        assert!(dyadic_increment(&phi, 1, &cfg()).is_err());
        assert!(dyadic_decomposition(&phi, 16, &cfg()).is_err());
    }
}
