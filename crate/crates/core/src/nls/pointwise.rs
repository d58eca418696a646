use rayon::prelude::*;

use super::{evolve_through, Equation, EvolutionConfig, TruncatedState};
use crate::error::{invalid, Result};
use crate::randomization::{median, sample_data_at, window_times, RandomDataSpec};
use crate::sphere::{SpectralField, SpectralTransform};

#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseConfig {
    pub samples: usize,
    /// Times `±τ j/m`, `j = 1..=m`, per window.
    pub times_per_side: usize,
    /// Grid exactness as a multiple of the cutoff.
    pub oversample: usize,
    /// Largest integrator step.
    pub dt: f64,
    pub dealias: usize,
    /// Coarser cutoffs `M < N` for the truncation-stability column.
    pub truncations: Vec<usize>,
}

impl Default for PointwiseConfig {
    fn default() -> Self {
        Self {
            samples: 2,
            times_per_side: 4,
            oversample: 4,
            dt: 1e-3,
            dealias: 2,
            truncations: Vec::new(),
        }
    }
}

/// `‖sup_{|t|≤τ} |u_N − u_M|‖_{L²}` over the grid, median over draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationEntry {
    pub coarse_cutoff: usize,
    pub median_l2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseRow {
    pub tau: f64,
    /// `‖sup_{|t|≤τ} |u(t) − φ|‖_{L²}` over the grid, per draw.
    pub l2_by_sample: Vec<f64>,
    pub median_l2: f64,
    /// Median over draws of the median over grid points of the sup.
    pub median_pointwise: f64,
    pub truncation: Vec<TruncationEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseReport {
    pub cutoff: usize,
    pub alpha: f64,
    pub rows: Vec<PointwiseRow>,
}

/// Per draw: for each window, the sup-over-time grids of `|u_N − φ|` and of
/// `|u_N − u_M|` for every coarse cutoff.
struct DrawSups {
    data: Vec<Vec<f64>>,
    truncation: Vec<Vec<Vec<f64>>>,
}

fn states_at(
    u0: &SpectralField,
    times: &[f64],
    cfg: &EvolutionConfig,
) -> Result<Vec<(f64, SpectralField)>> {
    let mut pos: Vec<f64> = times.iter().copied().filter(|&t| t > 0.0).collect();
    let mut neg: Vec<f64> = times.iter().copied().filter(|&t| t < 0.0).collect();
    pos.sort_by(f64::total_cmp);
    neg.sort_by(|a, b| b.total_cmp(a));
    let init = TruncatedState::initial(u0.clone());
    let mut out = Vec::with_capacity(times.len());
    for branch in [pos, neg] {
        for s in evolve_through(&init, &branch, cfg)? {
            out.push((s.time, s.field));
        }
    }
    Ok(out)
}

fn update_sup(sup: &mut [f64], transform: &SpectralTransform, diff: &SpectralField) -> Result<()> {
    let g = transform.synthesize(diff)?;
    for (s, v) in sup.iter_mut().zip(&g.values) {
        *s = s.max(v.norm());
    }
    Ok(())
}

/// Solves the truncated Wick equation from sampled data and measures how
/// fast `u(t) → φ` on shrinking windows `|t| ≤ τ`, together with the
/// stability of that sup under changing the truncation.
pub fn nls_pointwise_experiment(
    spec: &RandomDataSpec,
    scales: &[f64],
    cfg: &PointwiseConfig,
) -> Result<PointwiseReport> {
    let n = spec.cutoff;
    if scales.iter().any(|&t| !(t > 0.0)) {
        return invalid("time scales must be positive");
    }
    if cfg.samples == 0 || cfg.times_per_side == 0 {
        return invalid("need at least one sample and one time per side");
    }
    if let Some(&m) = cfg.truncations.iter().find(|&&m| m == 0 || m >= n) {
        return invalid(format!("coarse cutoff {m} must lie in 1..{n}"));
    }
    let evo = EvolutionConfig {
        dt: cfg.dt,
        dealias: cfg.dealias,
        final_time: 0.0,
        equation: Equation::Wick,
        snapshot_every: 0,
    };
    let transform = SpectralTransform::for_cutoff(n, cfg.oversample);
    let weights = transform.quadrature().node_weights();
    let windows: Vec<Vec<f64>> = scales
        .iter()
        .map(|&tau| window_times(tau, cfg.times_per_side))
        .collect();
    let all_times: Vec<f64> = windows.iter().flatten().copied().collect();
    let in_window = |w: &[f64], t: f64| w.contains(&t);

    let draws: Vec<DrawSups> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|j| {
            let phi = sample_data_at(spec, j);
            let fine = states_at(&phi, &all_times, &evo)?;
            let coarse: Vec<Vec<(f64, SpectralField)>> = cfg
                .truncations
                .iter()
                .map(|&m| states_at(&phi.truncate(m), &all_times, &evo))
                .collect::<Result<_>>()?;
            let len = weights.len();
            let mut data = vec![vec![0.0; len]; scales.len()];
            let mut truncation = vec![vec![vec![0.0; len]; cfg.truncations.len()]; scales.len()];
            for (i, (t, u)) in fine.iter().enumerate() {
                let diff_phi = u.sub(&phi)?;
                let diffs: Vec<SpectralField> = coarse
                    .iter()
                    .map(|c| u.sub(&c[i].1.truncate(n)))
                    .collect::<Result<_>>()?;
                for (w, window) in windows.iter().enumerate() {
                    if !in_window(window, *t) {
                        continue;
                    }
                    update_sup(&mut data[w], &transform, &diff_phi)?;
                    for (k, d) in diffs.iter().enumerate() {
                        update_sup(&mut truncation[w][k], &transform, d)?;
                    }
                }
            }
            Ok(DrawSups { data, truncation })
        })
        .collect::<Result<_>>()?;

    let l2 = |g: &[f64]| g.iter().zip(&weights).map(|(v, w)| w * v * v).sum::<f64>().sqrt();
    let rows = scales
        .iter()
        .enumerate()
        .map(|(w, &tau)| {
            let l2_by_sample: Vec<f64> = draws.iter().map(|d| l2(&d.data[w])).collect();
            let pointwise: Vec<f64> = draws.iter().map(|d| median(&d.data[w])).collect();
            let truncation = cfg
                .truncations
                .iter()
                .enumerate()
                .map(|(k, &m)| TruncationEntry {
                    coarse_cutoff: m,
                    median_l2: median(
                        &draws.iter().map(|d| l2(&d.truncation[w][k])).collect::<Vec<_>>(),
                    ),
                })
                .collect();
            PointwiseRow {
                tau,
                median_l2: median(&l2_by_sample),
                median_pointwise: median(&pointwise),
                l2_by_sample,
                truncation,
            }
        })
        .collect();
    Ok(PointwiseReport {
        cutoff: n,
        alpha: spec.alpha,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_data_converges_linearly() {
        let spec = RandomDataSpec::new(5.0, 12, 4).unwrap();
        let cfg = PointwiseConfig {
            samples: 2,
            truncations: vec![4, 8],
            ..Default::default()
        };
        let scales = [1e-1, 1e-2, 1e-3];
        let r = nls_pointwise_experiment(&spec, &scales, &cfg).unwrap();
        let ratio: Vec<f64> = r.rows.iter().map(|row| row.median_l2 / row.tau).collect();
        for w in ratio.windows(2) {
            assert!((w[0] / w[1] - 1.0).abs() < 0.1, "{ratio:?}");
        }
        for row in &r.rows {
            assert!(row.median_pointwise <= row.l2_by_sample.iter().cloned().fold(0.0, f64::max) * 3.0);
            assert!(row.truncation[1].median_l2 <= row.truncation[0].median_l2);
        }
    }

    #[test]
    fn rejects_bad_truncation() {
        let spec = RandomDataSpec::new(1.5, 8, 0).unwrap();
        let cfg = PointwiseConfig {
            truncations: vec![8],
            ..Default::default()
        };
        assert!(nls_pointwise_experiment(&spec, &[0.1], &cfg).is_err());
        assert!(nls_pointwise_experiment(&spec, &[0.0], &PointwiseConfig::default()).is_err());
    }
}
