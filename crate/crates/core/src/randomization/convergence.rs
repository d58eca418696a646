use num_complex::Complex64;

use super::{dyadic_shell, project_shell, sample_data_at, RandomDataSpec};
use crate::error::{invalid, Result};
use crate::regression::{fit_exponent, LinearFit};
use crate::sphere::{eigenvalue, SpectralField, SpectralTransform};

/// Sampling and resolution of [`linear_convergence_experiment`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearExperimentConfig {
    /// Independent draws of the data.
    pub samples: usize,
    /// Times `±τ j/m`, `j = 1..=m`, per window.
    pub times_per_side: usize,
    /// Grid exactness as a multiple of the cutoff.
    pub oversample: usize,
    /// Smallest dyadic shell in the `L^∞` profile.
    pub min_shell: usize,
}

impl Default for LinearExperimentConfig {
    fn default() -> Self {
        Self {
            samples: 4,
            times_per_side: 4,
            oversample: 4,
            min_shell: 4,
        }
    }
}

/// `sup_{|t| ≤ τ} sup_x |e^{it(Δ−1)}φ − φ|` for each draw.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleRow {
    pub tau: f64,
    pub sup_by_sample: Vec<f64>,
    pub median: f64,
    pub max: f64,
}

/// Mean over draws of the grid maximum of one dyadic shell `P_N φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellSup {
    pub shell: usize,
    pub mean_sup: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearConvergenceReport {
    pub rows: Vec<ScaleRow>,
    pub shell_profile: Vec<ShellSup>,
    /// Log–log fit of `mean_sup` against `N`.
    pub shell_fit: LinearFit,
    /// Same fit after dividing by `(ln N)^{1/2}`, the size of the maximum of
    /// `O(N²)` roughly independent Gaussians.
    pub normalized_shell_fit: LinearFit,
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m == 0 {
        f64::NAN
    } else if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

/// Symmetric times `±τ j/m`, `j = 1..=m`.
pub(crate) fn window_times(tau: f64, m: usize) -> Vec<f64> {
    (1..=m)
        .flat_map(|j| {
            let t = tau * j as f64 / m as f64;
            [-t, t]
        })
        .collect()
}

fn flow_difference(phi: &SpectralField, t: f64) -> SpectralField {
    let mut out = phi.clone();
    for n in 0..=phi.cutoff() {
        let l = eigenvalue(n).0;
        let factor = Complex64::from_polar(1.0, -t * l * l) - 1.0;
        out.shell_mut(n).iter_mut().for_each(|c| *c *= factor);
    }
    out
}

/// For each window `τ` and each draw, the sup over a symmetric time grid
/// and the oversampled spatial grid of `|e^{it(Δ−1)}φ − φ|`; plus the
/// dyadic-shell `L^∞` profile of the data.
pub fn linear_convergence_experiment(
    spec: &RandomDataSpec,
    scales: &[f64],
    cfg: &LinearExperimentConfig,
) -> Result<LinearConvergenceReport> {
    if scales.iter().any(|&t| !(t > 0.0)) {
        return invalid("time scales must be positive");
    }
    if cfg.samples == 0 || cfg.times_per_side == 0 {
        return invalid("need at least one sample and one time per side");
    }
    let transform = SpectralTransform::for_cutoff(spec.cutoff, cfg.oversample);
    let draws: Vec<SpectralField> = (0..cfg.samples as u64)
        .map(|s| sample_data_at(spec, s))
        .collect();
    let mut rows = Vec::with_capacity(scales.len());
    for &tau in scales {
        let mut sup_by_sample = Vec::with_capacity(draws.len());
        for phi in &draws {
            let mut sup: f64 = 0.0;
            for t in window_times(tau, cfg.times_per_side) {
                sup = sup.max(transform.synthesize(&flow_difference(phi, t))?.max_abs());
            }
            sup_by_sample.push(sup);
        }
        rows.push(ScaleRow {
            tau,
            median: median(&sup_by_sample),
            max: sup_by_sample.iter().cloned().fold(0.0, f64::max),
            sup_by_sample,
        });
    }

    let shells: Vec<usize> = (0..)
        .map(|k| 1usize << k)
        .skip_while(|&n| n < cfg.min_shell.max(2))
        .take_while(|&n| *dyadic_shell(n).end() <= spec.cutoff)
        .collect();
    let mut shell_profile = Vec::with_capacity(shells.len());
    for &n in &shells {
        let t = SpectralTransform::for_cutoff(*dyadic_shell(n).end(), cfg.oversample);
        let mut total = 0.0;
        for phi in &draws {
            total += t.synthesize(&project_shell(phi, n))?.max_abs();
        }
        shell_profile.push(ShellSup {
            shell: n,
            mean_sup: total / draws.len() as f64,
        });
    }
    let raw: Vec<(f64, f64)> = shell_profile
        .iter()
        .map(|s| (s.shell as f64, s.mean_sup))
        .collect();
    let normalized: Vec<(f64, f64)> = raw.iter().map(|&(n, v)| (n, v / n.ln().sqrt())).collect();
    Ok(LinearConvergenceReport {
        rows,
        shell_profile,
        shell_fit: fit_exponent(&raw)?,
        normalized_shell_fit: fit_exponent(&normalized)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_and_window() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(window_times(0.2, 2), vec![-0.1, 0.1, -0.2, 0.2]);
    }

    #[test]
    fn zero_time_difference_vanishes() {
        let phi = sample_data_at(&RandomDataSpec::new(1.5, 8, 1).unwrap(), 0);
        assert!(flow_difference(&phi, 0.0).norm_sq() == 0.0);
    }
}
