use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::exceptional::MAX_TIME;
use super::{build_exceptional_set, schrodinger_sum, BumpProfile, ExceptionalSet, RationalPoint};
use crate::error::{invalid, Result};
use crate::quadrature::GaussLegendre;
use crate::sphere::{eigenvalue, highest_weight_norm_sq};

/// Exponent `ε` of the radial window `(1 − N^{−1−ε}, 1)`.
pub const RADIAL_EPSILON: f64 = 0.01;

/// The radial window `(1 − N^{−1−ε}, 1)` for [`RADIAL_EPSILON`].
pub fn radial_window(cutoff: usize) -> (f64, f64) {
    (1.0 - (cutoff as f64).powf(-1.0 - RADIAL_EPSILON), 1.0)
}

/// How the supremum over `t ∈ [0, 1]` is approximated.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeMode {
    /// Only `t = 2π/p` for the arc's own modulus: a certified lower bound.
    Rational,
    /// `t = j/K`, `j = 0..=K`.
    Grid(usize),
    /// An explicit list of times in `[0, 1]`.
    Times(Vec<f64>),
}

impl TimeMode {
    /// `Grid(10 p_max²)`, fine enough that every `2π/p` of the set is
    /// within `O(1/K)` of a grid time.
    pub fn default_grid(set: &ExceptionalSet) -> Self {
        let p_max = set.moduli().last().copied().unwrap_or(1);
        TimeMode::Grid(10 * (p_max * p_max) as usize)
    }
}

/// Profile weights and rational phase data for fast evaluation of
/// `S_N(2π/p, 2πq/p + δ, λ)` at many `(δ, λ)`.
struct RationalKernel {
    start: usize,
    weights: Vec<f64>,
    phases: Vec<Complex64>,
}

impl RationalKernel {
    fn new(cutoff: usize, point: RationalPoint, weights: &[f64], start: usize) -> Self {
        let (p, q) = (point.p(), point.q());
        let roots: Vec<Complex64> = (0..p)
            .map(|r| Complex64::from_polar(1.0, TAU * r as f64 / p as f64))
            .collect();
        let phases = (start..start + weights.len())
            .map(|n| {
                let n = n as u64;
                roots[(((n % p) * ((n + 1 + q) % p)) % p) as usize]
            })
            .collect();
        debug_assert!(start + weights.len() <= 5 * cutoff / 2 + 1);
        Self {
            start,
            weights: weights.to_vec(),
            phases,
        }
    }

    fn eval(&self, offset: f64, lam: f64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = lam.powi(self.start as i32);
        for (i, (&w, &ph)) in self.weights.iter().zip(&self.phases).enumerate() {
            let n = (self.start + i) as f64;
            sum += ph * Complex64::from_polar(w * pow, offset * n);
            pow *= lam;
        }
        sum
    }
}

fn sup_over_times(cutoff: usize, times: &[f64], theta: f64, lam: f64, profile: &BumpProfile) -> f64 {
    times
        .iter()
        .map(|&t| schrodinger_sum(cutoff, t, theta, lam, profile).norm())
        .fold(0.0, f64::max)
}

/// One evaluation of the (approximate) maximal function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub point: RationalPoint,
    pub theta: f64,
    pub lam: f64,
    pub value: f64,
}

/// Maximal-function values at the arc centers of `ℰ` for each radius.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalScanResult {
    pub cutoff: usize,
    pub points: Vec<ScanPoint>,
    /// `min MS_N / (N^{3/4} λ^N)` over all scanned points.
    pub certificate_min: f64,
}

/// Evaluates `MS_N(θ, λ)` at every arc center of `set` and every radius in
/// `radii`.
pub fn maximal_scan(
    set: &ExceptionalSet,
    radii: &[f64],
    mode: &TimeMode,
    profile: &BumpProfile,
) -> Result<MaximalScanResult> {
    let cutoff = set.cutoff;
    if radii.iter().any(|&l| !(0.0..=1.0).contains(&l)) {
        return invalid("radii must lie in [0, 1]");
    }
    let times: Vec<f64> = match mode {
        TimeMode::Rational => Vec::new(),
        TimeMode::Grid(k) => {
            if *k == 0 {
                return invalid("time grid needs at least one interval");
            }
            (0..=*k).map(|j| MAX_TIME * j as f64 / *k as f64).collect()
        }
        TimeMode::Times(ts) => {
            if ts.iter().any(|&t| !(0.0..=MAX_TIME).contains(&t)) {
                return invalid(format!("times must lie in [0, {MAX_TIME}]"));
            }
            ts.clone()
        }
    };
    let range = profile.degree_range(cutoff);
    let weights = profile.weights(cutoff);
    let scale = (cutoff as f64).powf(0.75);
    let mut points = Vec::with_capacity(set.arcs().len() * radii.len());
    let mut certificate_min = f64::INFINITY;
    for arc in set.arcs() {
        let kernel = matches!(mode, TimeMode::Rational)
            .then(|| RationalKernel::new(cutoff, arc.point, &weights, range.start));
        for &lam in radii {
            let value = match &kernel {
                Some(k) => k.eval(0.0, lam).norm(),
                None => sup_over_times(cutoff, &times, arc.arc.center, lam, profile),
            };
            certificate_min = certificate_min.min(value / (scale * lam.powi(cutoff as i32)));
            points.push(ScanPoint {
                point: arc.point,
                theta: arc.arc.center,
                lam,
                value,
            });
        }
    }
    Ok(MaximalScanResult {
        cutoff,
        points,
        certificate_min,
    })
}

/// Outcome of the mean-value perturbation estimate on one arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    /// `|S_N(2π/p, 2πq/p + δ, λ) − S_N(2π/p, 2πq/p, λ)|`.
    pub difference: f64,
    /// `¼ C₀^{−3/2} N^{3/4} λ^N`.
    pub bound: f64,
}

pub fn mean_value_perturbation(
    cutoff: usize,
    point: RationalPoint,
    offset: f64,
    lam: f64,
    c0: u64,
    profile: &BumpProfile,
) -> Perturbation {
    let range = profile.degree_range(cutoff);
    let kernel = RationalKernel::new(cutoff, point, &profile.weights(cutoff), range.start);
    let difference = (kernel.eval(offset, lam) - kernel.eval(0.0, lam)).norm();
    let bound = 0.25
        * (c0 as f64).powf(-1.5)
        * (cutoff as f64).powf(0.75)
        * lam.powi(cutoff as i32);
    Perturbation { difference, bound }
}

/// `‖f_N‖_{H^s} = (Σ_n φ(n/N)² λ_n^{2s} ‖(x₁+ix₂)ⁿ‖²_{L²})^{1/2}`.
pub fn data_sobolev_norm(cutoff: usize, s: f64, profile: &BumpProfile) -> f64 {
    let range = profile.degree_range(cutoff);
    range
        .clone()
        .zip(profile.weights(cutoff))
        .map(|(n, w)| w * w * eigenvalue(n).0.powf(2.0 * s) * highest_weight_norm_sq(n))
        .sum::<f64>()
        .sqrt()
}

/// Discretisation of the `L^r` integral over `ℰ × (1 − N^{−1−ε}, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormConfig {
    pub c0: u64,
    /// Gauss–Legendre nodes across each arc.
    pub angle_nodes: usize,
    /// Gauss–Legendre nodes in `u`, where `λ = 1 − u²`.
    pub radial_nodes: usize,
}

impl Default for NormConfig {
    fn default() -> Self {
        Self {
            c0: 4,
            angle_nodes: 4,
            radial_nodes: 4,
        }
    }
}

/// Lower bound for `‖sup_t |e^{itΔ} f_N|‖_{L^r}` restricted to the region
/// over `ℰ`, together with `‖f_N‖_{H^s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalNorm {
    pub cutoff: usize,
    pub r: f64,
    pub s: f64,
    /// `‖MS_N‖_{L^r}` over the region, with the rational-time lower bound
    /// for `MS_N`.
    pub maximal_norm: f64,
    pub data_norm: f64,
    pub ratio: f64,
    /// Total length of `ℰ`.
    pub measure: f64,
    pub arc_count: usize,
}

/// Integrates `|MS_N|^r` against the unit-mass surface measure over the
/// points `(x₁ + ix₂ = λe^{iθ})` with `θ ∈ ℰ`, `λ` in the radial window,
/// in both hemispheres. In these coordinates
/// `dσ = (4π)^{−1} λ (1 − λ²)^{−1/2} dλ dθ` per hemisphere; the endpoint
/// singularity at `λ = 1` is removed by `λ = 1 − u²`, which turns the
/// density into `2λ (1 + λ)^{−1/2} du`.
pub fn maximal_norm(
    cutoff: usize,
    r: f64,
    s: f64,
    cfg: &NormConfig,
    profile: &BumpProfile,
) -> Result<MaximalNorm> {
    if !(r >= 1.0) {
        return invalid(format!("r = {r} must be at least 1"));
    }
    if cfg.angle_nodes == 0 || cfg.radial_nodes == 0 {
        return invalid("node counts must be positive");
    }
    let set = build_exceptional_set(cutoff, cfg.c0)?;
    let range = profile.degree_range(cutoff);
    let weights = profile.weights(cutoff);
    let angle_rule = GaussLegendre::new(cfg.angle_nodes);
    let radial_rule = GaussLegendre::new(cfg.radial_nodes);
    let u_max = (1.0 - radial_window(cutoff).0).sqrt();
    let mut total = 0.0;
    for arc in set.arcs() {
        let kernel = RationalKernel::new(cutoff, arc.point, &weights, range.start);
        let rho = arc.arc.radius;
        total += angle_rule.integrate(-rho, rho, |offset| {
            radial_rule.integrate(0.0, u_max, |u| {
                let lam = 1.0 - u * u;
                2.0 * lam / (1.0 + lam).sqrt() * kernel.eval(offset, lam).norm().powf(r)
            })
        });
    }
    // two hemispheres, unit-mass normalisation
    let maximal = (2.0 * total / (4.0 * PI)).powf(1.0 / r);
    let data = data_sobolev_norm(cutoff, s, profile);
    Ok(MaximalNorm {
        cutoff,
        r,
        s,
        maximal_norm: maximal,
        data_norm: data,
        ratio: maximal / data,
        measure: set.measure(),
        arc_count: set.arcs().len(),
    })
}

/// `‖MS_N‖_{L^r(ℰ-region)} / ‖f_N‖_{H^s}` with the default discretisation.
pub fn maximal_norm_ratio(cutoff: usize, r: f64, s: f64) -> Result<f64> {
    Ok(maximal_norm(cutoff, r, s, &NormConfig::default(), &BumpProfile)?.ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_matches_public_sum() {
        let b = BumpProfile;
        let rp = RationalPoint::new(15, 4).unwrap();
        let k = RationalKernel::new(256, rp, &b.weights(256), b.degree_range(256).start);
        let direct = super::super::schrodinger_sum_rational(256, rp, 3e-4, 0.9995, &b);
        assert!((k.eval(3e-4, 0.9995) - direct).norm() < 1e-9 * direct.norm());
    }

    #[test]
    fn grid_dominates_its_members() {
        let b = BumpProfile;
        let set = build_exceptional_set(64, 4).unwrap();
        let lam = radial_window(64).0;
        let rational = maximal_scan(&set, &[lam], &TimeMode::Rational, &b).unwrap();
        let times: Vec<f64> = set.moduli().iter().map(|&p| TAU / p as f64).collect();
        let listed = maximal_scan(&set, &[lam], &TimeMode::Times(times), &b).unwrap();
        for (a, g) in rational.points.iter().zip(&listed.points) {
            assert!(g.value >= a.value * (1.0 - 1e-12));
        }
    }

    #[test]
    fn rejects_times_outside_window() {
        let set = build_exceptional_set(64, 4).unwrap();
        let r = maximal_scan(&set, &[0.99], &TimeMode::Times(vec![1.5]), &BumpProfile);
        assert!(r.is_err());
    }

    #[test]
    fn data_norm_at_zero_smoothness_is_l2() {
        let b = BumpProfile;
        let direct: f64 = b
            .degree_range(16)
            .map(|n| b.value(n as f64 / 16.0).powi(2) * highest_weight_norm_sq(n))
            .sum();
        assert!((data_sobolev_norm(16, 0.0, &b) - direct.sqrt()).abs() < 1e-14);
    }
}
