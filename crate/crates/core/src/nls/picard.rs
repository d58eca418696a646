use num_complex::Complex64;
use rayon::prelude::*;

use super::{CubicOperator, Nonlinearity};
use crate::error::{invalid, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::randomization::{sample_data_at, RandomDataSpec};
use crate::regression::{linear_fit, LinearFit};
use crate::sphere::{eigenvalue, linear_flow, sobolev_norm, PhaseConvention, SpectralField};

/// Resolution of the `s`-integral in [`second_picard`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardRule {
    /// Nodes added on top of `N(N+1)|t|/2`.
    pub margin: usize,
    /// Re-evaluate with twice the nodes and fail if the relative change
    /// exceeds `tolerance`.
    pub check_doubling: bool,
    pub tolerance: f64,
}

impl Default for PicardRule {
    fn default() -> Self {
        Self {
            margin: 64,
            check_doubling: false,
            tolerance: 1e-6,
        }
    }
}

impl PicardRule {
    /// The integrand's frequencies `λ_n² − λ_{n₁}² + λ_{n₂}² − λ_{n₃}²` are
    /// bounded by `ω = 2N(N+1)`; an `M`-point Gauss rule integrates
    /// polynomials of degree `2M − 1`, and `e^{iωs}` on `[0, t]` is resolved
    /// once that degree passes `ωt/2` with some margin.
    pub fn nodes(&self, cutoff: usize, t: f64) -> usize {
        (0.5 * cutoff as f64 * (cutoff + 1) as f64 * t.abs()).ceil() as usize + self.margin.max(1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PicardIterate {
    pub field: SpectralField,
    pub nodes: usize,
    /// Relative `L²` change under node doubling, when checked.
    pub doubling_change: Option<f64>,
}

/// Duhamel integral with a fixed Gauss–Legendre rule of `nodes` points.
fn duhamel(op: &CubicOperator, phi: &SpectralField, t: f64, nodes: usize) -> Result<SpectralField> {
    let cutoff = phi.cutoff();
    let gl = GaussLegendre::new(nodes);
    let half = 0.5 * t;
    let lambda_sq: Vec<f64> = (0..=cutoff).map(|n| eigenvalue(n).0.powi(2)).collect();
    let terms: Vec<SpectralField> = gl
        .nodes
        .par_iter()
        .zip(&gl.weights)
        .map(|(&x, &w)| {
            let s = half * (x + 1.0);
            let mut term = op.apply(&linear_flow(phi, s, PhaseConvention::Shifted), Nonlinearity::Wick)?;
            for (n, &l2) in lambda_sq.iter().enumerate() {
                let e = Complex64::from_polar(w * half, s * l2);
                term.shell_mut(n).iter_mut().for_each(|c| *c *= e);
            }
            Ok(term)
        })
        .collect::<Result<_>>()?;
    let mut acc = SpectralField::zeros(cutoff);
    for term in &terms {
        acc.axpy(Complex64::new(1.0, 0.0), term)?;
    }
    for (n, &l2) in lambda_sq.iter().enumerate() {
        let e = Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, -t * l2);
        acc.shell_mut(n).iter_mut().for_each(|c| *c *= e);
    }
    Ok(acc)
}

/// `𝒯(t, φ) = −i ∫₀ᵗ e^{i(t−s)(Δ−1)} :|e^{is(Δ−1)}φ|² e^{is(Δ−1)}φ: ds`,
/// the first Duhamel correction of the Wick-ordered flow.
pub fn second_picard(phi: &SpectralField, t: f64, rule: &PicardRule) -> Result<PicardIterate> {
    if !t.is_finite() {
        return invalid("time must be finite");
    }
    let op = CubicOperator::new(phi.cutoff(), 2)?;
    let nodes = rule.nodes(phi.cutoff(), t);
    let field = duhamel(&op, phi, t, nodes)?;
    let doubling_change = if rule.check_doubling {
        let fine = duhamel(&op, phi, t, 2 * nodes)?;
        let scale = fine.norm_sq().sqrt();
        let change = if scale == 0.0 {
            0.0
        } else {
            field.sub(&fine)?.norm_sq().sqrt() / scale
        };
        if change > rule.tolerance {
            return Err(Error::Quadrature(format!(
                "unresolved oscillation: {nodes} → {} nodes changed the iterate by {change:.2e}",
                2 * nodes
            )));
        }
        Some(change)
    } else {
        None
    };
    Ok(PicardIterate {
        field,
        nodes,
        doubling_change,
    })
}

/// Monte-Carlo `‖𝒯(t, P_{≤N} φ_α^ω)‖_{L²_ω H^{α−1}}` at one cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct PicardGrowthRow {
    pub cutoff: usize,
    pub norm: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PicardGrowth {
    pub alpha: f64,
    pub time: f64,
    pub rows: Vec<PicardGrowthRow>,
    /// `norm` regressed linearly against `(ln N)^{1/2}`.
    pub fit: LinearFit,
}

/// Draws are shared across cutoffs (sample `j` of seed `seed`), so the data
/// at different `N` are nested truncations of one random field.
pub fn picard_growth(
    alpha: f64,
    cutoffs: &[usize],
    t: f64,
    samples: usize,
    seed: u64,
    rule: &PicardRule,
) -> Result<PicardGrowth> {
    if samples == 0 || cutoffs.len() < 2 || cutoffs.iter().any(|&n| n < 2) {
        return invalid("need samples ≥ 1 and at least two cutoffs ≥ 2");
    }
    let mut rows = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let spec = RandomDataSpec::new(alpha, cutoff, seed)?;
        let squares: Vec<f64> = (0..samples as u64)
            .map(|j| {
                let phi = sample_data_at(&spec, j);
                Ok(sobolev_norm(&second_picard(&phi, t, rule)?.field, alpha - 1.0).powi(2))
            })
            .collect::<Result<_>>()?;
        rows.push(PicardGrowthRow {
            cutoff,
            norm: (squares.iter().sum::<f64>() / samples as f64).sqrt(),
            samples,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.cutoff as f64).ln().sqrt()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.norm).collect();
    Ok(PicardGrowth {
        alpha,
        time: t,
        fit: linear_fit(&xs, &ys)?,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(cutoff: usize, seed: u64) -> SpectralField {
        sample_data_at(&RandomDataSpec::new(1.5, cutoff, seed).unwrap(), 0)
    }

    #[test]
    fn zero_time_gives_zero() {
        let r = second_picard(&data(8, 0), 0.0, &PicardRule::default()).unwrap();
        assert_eq!(r.field.norm_sq(), 0.0);
    }

    #[test]
    fn constant_data_closed_form() {
        // u = c: the flow is e^{−is}c and :|u|²u: = −|c|²u, so
        // 𝒯 = −i ∫₀ᵗ e^{−i(t−s)} (−|c|²) e^{−is} c ds = i t |c|² e^{−it} c.
        let c = Complex64::new(0.3, 0.5);
        let mut phi = SpectralField::zeros(4);
        phi.set(0, 0, c);
        let t = 0.4;
        let r = second_picard(&phi, t, &PicardRule::default()).unwrap();
        let expected = Complex64::new(0.0, t * c.norm_sqr()) * Complex64::from_polar(1.0, -t) * c;
        assert!((r.field.get(0, 0) - expected).norm() < 1e-14);
        assert!(r.field.norm_sq() - r.field.get(0, 0).norm_sqr() < 1e-26);
    }

    #[test]
    fn matches_small_time_expansion() {
        // 𝒯(t) = −i t :|φ|²φ: + O(t²)
        let phi = data(6, 2);
        let t = 1e-4;
        let r = second_picard(&phi, t, &PicardRule::default()).unwrap();
        let mut lead = CubicOperator::new(6, 2).unwrap().apply(&phi, Nonlinearity::Wick).unwrap();
        lead.scale(Complex64::new(0.0, -t));
        let rel = r.field.sub(&lead).unwrap().norm_sq().sqrt() / lead.norm_sq().sqrt();
        assert!(rel < 1e-2, "{rel}");
    }

    #[test]
    fn node_doubling_is_stable() {
        let rule = PicardRule {
            check_doubling: true,
            ..Default::default()
        };
        let r = second_picard(&data(32, 1), 0.1, &rule).unwrap();
        assert_eq!(r.nodes, 53 + 64);
        assert!(r.doubling_change.unwrap() < 1e-6);
    }

    #[test]
    fn unresolved_rule_is_flagged() {
        let rule = PicardRule {
            margin: 1,
            check_doubling: true,
            tolerance: 1e-6,
        };
        let err = second_picard(&data(16, 1), 2.0, &rule).unwrap_err();
        assert!(matches!(err, Error::Quadrature(_)), "{err}");
    }

    #[test]
    fn growth_fit_reports_rows() {
        let g = picard_growth(1.5, &[4, 8], 0.05, 2, 3, &PicardRule::default()).unwrap();
        assert_eq!(g.rows.len(), 2);
        assert!(g.rows.iter().all(|r| r.norm > 0.0 && r.samples == 2));
        assert!(picard_growth(1.5, &[8], 0.05, 2, 3, &PicardRule::default()).is_err());
    }
}
