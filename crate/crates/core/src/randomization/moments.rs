use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use super::{dyadic_shell, GaussianStream, RandomDataSpec, ShellFunction};
use crate::error::{invalid, Result};
use crate::regression::{linear_fit, LinearFit};
use crate::sphere::{basis_values, eigenvalue, SpherePoint};

/// Two-sided 95% normal quantile.
pub const CONFIDENCE_Z: f64 = 1.959_963_984_540_054;

/// Fewest samples any estimator accepts.
pub const MIN_SAMPLES: usize = 1000;

/// Monte-Carlo estimate of `‖X‖_{L^p_ω} = (E|X|^p)^{1/p}` with a 95%
/// confidence half-width from the delta method on `log E|X|^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub p: f64,
    pub samples: usize,
    pub estimate: f64,
    pub half_width: f64,
}

impl MomentEstimate {
    pub fn from_magnitudes(p: f64, values: &[f64]) -> Result<Self> {
        if !(p >= 1.0) {
            return invalid(format!("moment order {p} must be at least 1"));
        }
        if values.len() < MIN_SAMPLES {
            return invalid(format!(
                "{} samples is below the minimum {MIN_SAMPLES}",
                values.len()
            ));
        }
        let m = values.len() as f64;
        let powers: Vec<f64> = values.iter().map(|v| v.powf(p)).collect();
        let mean = powers.iter().sum::<f64>() / m;
        let var = powers.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
        let rel_se = (var / m).sqrt() / mean;
        let estimate = mean.powf(1.0 / p);
        Ok(Self {
            p,
            samples: values.len(),
            estimate,
            half_width: estimate * CONFIDENCE_Z * rel_se / p,
        })
    }

    /// Whether `value` lies within `k` half-widths of the estimate.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.estimate - value).abs() <= k * self.half_width
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return invalid(format!("{samples} samples is below the minimum {MIN_SAMPLES}"));
    }
    Ok(())
}

/// `(E|g|^p)^{1/p} = Γ(p/2 + 1)^{1/p}` for a standard complex Gaussian.
pub fn complex_gaussian_norm(p: f64) -> f64 {
    gamma(p / 2.0 + 1.0).powf(1.0 / p)
}

/// `‖e_n^ω(x)‖_{L^p_ω}` for the normalised random shell function.
pub fn shell_moment_check(
    n: usize,
    x: SpherePoint,
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<MomentEstimate> {
    check_samples(samples)?;
    let basis = basis_values(n, x)?;
    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|s| ShellFunction::sample(n, seed, s).eval_with(&basis).norm())
        .collect();
    MomentEstimate::from_magnitudes(p, &values)
}

/// `E|P_N e^{it(Δ−1)} φ(x)|² = Σ_{N/2<λ_n≤N} λ_n^{−2α}(2n+1)`; independent of
/// `x` and `t` by the local Weyl law and unitarity.
pub fn projected_second_moment(alpha: f64, big_n: usize) -> f64 {
    dyadic_shell(big_n)
        .map(|n| eigenvalue(n).0.powf(-2.0 * alpha) * (2 * n + 1) as f64)
        .sum()
}

/// One entry of [`projected_moment_table`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectedMoment {
    pub alpha: f64,
    pub shell: usize,
    pub moment: MomentEstimate,
    /// Exact `L²_ω` norm, `projected_second_moment(α, N)^{1/2}`.
    pub exact_l2: f64,
}

/// `‖P_N e^{it(Δ−1)} φ_α^ω(x)‖_{L^p_ω}` for every `α` in `alphas` and every
/// dyadic `N` in `shells`, all from the same Gaussians (sample `s` of
/// `seed`), so the columns share their randomness.
pub fn projected_moment_table(
    alphas: &[f64],
    shells: &[usize],
    p: f64,
    x: SpherePoint,
    t: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<ProjectedMoment>> {
    check_samples(samples)?;
    if let Some(a) = alphas.iter().find(|&&a| !(a > 1.0)) {
        return invalid(format!("α = {a} must exceed 1"));
    }
    let top = shells
        .iter()
        .map(|&s| *dyadic_shell(s).end())
        .max()
        .unwrap_or(0);
    let basis: Vec<Vec<f64>> = (0..=top).map(|n| basis_values(n, x)).collect::<Result<_>>()?;
    let phases: Vec<Complex64> = (0..=top)
        .map(|n| {
            let l = eigenvalue(n).0;
            Complex64::from_polar(1.0, -t * l * l)
        })
        .collect();
    let weights: Vec<Vec<f64>> = alphas
        .iter()
        .map(|&a| (0..=top).map(|n| eigenvalue(n).0.powf(-a)).collect())
        .collect();
    let per_sample: Vec<Vec<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut stream = GaussianStream::new(seed, s);
            stream.seek(0);
            let z: Vec<Complex64> = basis
                .iter()
                .zip(&phases)
                .map(|(b, ph)| b.iter().map(|&v| stream.next_gaussian() * v).sum::<Complex64>() * ph)
                .collect();
            let mut row = Vec::with_capacity(alphas.len() * shells.len());
            for w in &weights {
                for &sh in shells {
                    let v: Complex64 = dyadic_shell(sh).map(|n| z[n] * w[n]).sum();
                    row.push(v.norm());
                }
            }
            row
        })
        .collect();
    let mut out = Vec::with_capacity(alphas.len() * shells.len());
    for (ai, &alpha) in alphas.iter().enumerate() {
        for (si, &shell) in shells.iter().enumerate() {
            let col: Vec<f64> = per_sample
                .iter()
                .map(|row| row[ai * shells.len() + si])
                .collect();
            out.push(ProjectedMoment {
                alpha,
                shell,
                moment: MomentEstimate::from_magnitudes(p, &col)?,
                exact_l2: projected_second_moment(alpha, shell).sqrt(),
            });
        }
    }
    Ok(out)
}

/// `‖P_N e^{it(Δ−1)} φ_α^ω(x)‖_{L^p_ω}` for a single shell.
pub fn projected_moment_check(
    spec: &RandomDataSpec,
    big_n: usize,
    p: f64,
    x: SpherePoint,
    t: f64,
    samples: usize,
) -> Result<MomentEstimate> {
    let table = projected_moment_table(&[spec.alpha], &[big_n], p, x, t, samples, spec.seed)?;
    Ok(table[0].moment)
}

fn l2(c: &[f64]) -> f64 {
    c.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn linear_combinations(c: &[f64], samples: usize, seed: u64) -> Vec<f64> {
    (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut stream = GaussianStream::new(seed, s);
            stream.seek(0);
            c.iter().map(|&v| stream.next_gaussian() * v).sum::<Complex64>().norm()
        })
        .collect()
}

/// `‖Σ_n c_n g_n‖_{L^p_ω}`; the exact value is `‖c‖_{ℓ²} Γ(p/2+1)^{1/p}`.
pub fn khinchine_check(c: &[f64], p: f64, samples: usize, seed: u64) -> Result<MomentEstimate> {
    check_samples(samples)?;
    if !(l2(c) > 0.0) {
        return invalid("coefficient sequence must be nonzero");
    }
    MomentEstimate::from_magnitudes(p, &linear_combinations(c, samples, seed))
}

/// Empirical tail `P(|Σ c_n g_n| > λ)` and a least-squares fit of its
/// logarithm against `λ²/‖c‖²` (exact law: `exp(−λ²/‖c‖²)`).
#[derive(Debug, Clone, PartialEq)]
pub struct TailCurve {
    /// `(λ, empirical probability)`.
    pub points: Vec<(f64, f64)>,
    /// Fit of `ln P` against `λ²/‖c‖²` over the points with `P > 0`.
    pub fit: LinearFit,
}

pub fn tail_check(c: &[f64], lambdas: &[f64], samples: usize, seed: u64) -> Result<TailCurve> {
    check_samples(samples)?;
    let norm = l2(c);
    if !(norm > 0.0) {
        return invalid("coefficient sequence must be nonzero");
    }
    let values = linear_combinations(c, samples, seed);
    let points: Vec<(f64, f64)> = lambdas
        .iter()
        .map(|&l| {
            let hits = values.iter().filter(|&&v| v > l).count();
            (l, hits as f64 / samples as f64)
        })
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = points
        .iter()
        .filter(|(_, prob)| *prob > 0.0)
        .map(|&(l, prob)| ((l / norm).powi(2), prob.ln()))
        .unzip();
    let fit = linear_fit(&xs, &ys)?;
    Ok(TailCurve { points, fit })
}

/// Homogeneous Gaussian polynomial `S_k = Σ_I c_I g_{i₁} ⋯ g_{i_k}` (no
/// conjugates), stored as a sparse list of index tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosCoefficients {
    pub order: usize,
    pub terms: Vec<(Vec<usize>, f64)>,
}

impl ChaosCoefficients {
    pub fn new(order: usize, terms: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        if order == 0 {
            return invalid("chaos order must be positive");
        }
        if terms.iter().any(|(idx, _)| idx.len() != order) {
            return invalid(format!("every index tuple must have length {order}"));
        }
        Ok(Self { order, terms })
    }

    /// `count` terms on tuples of distinct indices below `dim`, with
    /// Gaussian coefficients.
    pub fn random_diagonal_free(order: usize, dim: usize, count: usize, seed: u64) -> Result<Self> {
        if dim < order {
            return invalid(format!("need at least {order} indices, got {dim}"));
        }
        let mut stream = GaussianStream::new(seed, u64::MAX);
        let mut terms = Vec::with_capacity(count);
        while terms.len() < count {
            let idx: Vec<usize> = (0..order)
                .map(|_| ((stream.next_uniform() * dim as f64) as usize).min(dim - 1))
                .collect();
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() == order {
                // real standard normal
                let c = stream.next_gaussian().re * std::f64::consts::SQRT_2;
                terms.push((idx, c));
            }
        }
        Self::new(order, terms)
    }

    pub fn dimension(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|(idx, _)| idx.iter())
            .max()
            .map_or(0, |m| m + 1)
    }

    /// `‖S_k‖_{L²_ω}` for diagonal-free coefficients: terms that are
    /// permutations of one another merge, distinct index sets are
    /// orthonormal.
    pub fn exact_l2(&self) -> Result<f64> {
        let mut merged: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (idx, c) in &self.terms {
            let mut key = idx.clone();
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return invalid("exact L² norm requires diagonal-free coefficients");
            }
            *merged.entry(key).or_default() += c;
        }
        Ok(merged.values().map(|v| v * v).sum::<f64>().sqrt())
    }

    pub fn evaluate(&self, g: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(idx, c)| idx.iter().fold(Complex64::new(*c, 0.0), |acc, &i| acc * g[i]))
            .sum()
    }
}

/// `‖S_k‖_{L^p} / ‖S_k‖_{L²}` against the hypercontractive bound
/// `(p − 1)^{k/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosRatio {
    pub order: usize,
    pub p: f64,
    pub lp: MomentEstimate,
    pub l2: f64,
    pub ratio: f64,
    pub ratio_half_width: f64,
    pub bound: f64,
}

impl ChaosRatio {
    /// The bound holds unless the whole confidence interval lies above it.
    pub fn within_bound(&self) -> bool {
        self.ratio - self.ratio_half_width <= self.bound
    }
}

pub fn wiener_chaos_check(
    coeffs: &ChaosCoefficients,
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<ChaosRatio> {
    check_samples(samples)?;
    let l2 = coeffs.exact_l2()?;
    if !(l2 > 0.0) {
        return invalid("chaos coefficients vanish");
    }
    let dim = coeffs.dimension();
    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut stream = GaussianStream::new(seed, s);
            stream.seek(0);
            let mut g = vec![Complex64::new(0.0, 0.0); dim];
            stream.fill(&mut g);
            coeffs.evaluate(&g).norm()
        })
        .collect();
    let lp = MomentEstimate::from_magnitudes(p, &values)?;
    Ok(ChaosRatio {
        order: coeffs.order,
        p,
        lp,
        l2,
        ratio: lp.estimate / l2,
        ratio_half_width: lp.half_width / l2,
        bound: (p - 1.0).powf(coeffs.order as f64 / 2.0),
    })
}
