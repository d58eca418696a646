use std::f64::consts::TAU;

use num_complex::Complex64;

use super::BumpProfile;
use crate::error::{invalid, Error, Result};
use crate::number_theory::{gcd, GaussSumClosedForm, GAUSS_CONVENTION};
use crate::quadrature::AdaptiveIntegrator;

/// Coprime pair `(p, q)`, `p` odd and `q` even, encoding the time `2π/p`
/// and the angle `2πq/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    p: u64,
    q: u64,
}

impl RationalPoint {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) {
            return invalid(format!("p = {p} must be odd and at least 3"));
        }
        if !q.is_multiple_of(2) || gcd(p, q) != 1 {
            return invalid(format!("q = {q} must be even and coprime to p = {p}"));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn time(&self) -> f64 {
        TAU / self.p as f64
    }

    pub fn angle(&self) -> f64 {
        TAU * self.q as f64 / self.p as f64
    }
}

/// `S_N(t, θ, λ) = Σ_n φ(n/N) e^{itn(n+1)} e^{inθ} λⁿ`, summed directly over
/// the support of the profile.
pub fn schrodinger_sum(cutoff: usize, t: f64, theta: f64, lam: f64, profile: &BumpProfile) -> Complex64 {
    profile
        .degree_range(cutoff)
        .map(|n| {
            let w = profile.value(n as f64 / cutoff as f64) * lam.powi(n as i32);
            let phase = t * (n * (n + 1)) as f64 + n as f64 * theta;
            Complex64::from_polar(w, phase)
        })
        .sum()
}

/// `S_N(2π/p, 2πq/p + δ, λ)` with the rational part of the phase reduced
/// exactly modulo `p`.
pub fn schrodinger_sum_rational(
    cutoff: usize,
    point: RationalPoint,
    offset: f64,
    lam: f64,
    profile: &BumpProfile,
) -> Complex64 {
    let (p, q) = (point.p, point.q);
    let roots: Vec<Complex64> = (0..p)
        .map(|r| Complex64::from_polar(1.0, TAU * r as f64 / p as f64))
        .collect();
    let shift = Complex64::from_polar(1.0, offset);
    let range = profile.degree_range(cutoff);
    let mut rot = Complex64::from_polar(1.0, offset * range.start as f64);
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, n) in range.enumerate() {
        if i % 64 == 0 {
            // refresh the rotation to keep the recurrence from drifting
            rot = Complex64::from_polar(1.0, offset * n as f64);
        }
        let n64 = n as u64;
        let r = ((n64 % p) * ((n64 + 1 + q) % p)) % p;
        let w = profile.value(n as f64 / cutoff as f64) * lam.powi(n as i32);
        sum += roots[r as usize] * rot * w;
        rot *= shift;
    }
    sum
}

/// Tolerance used for every evaluation of [`bump_transform`].
const TRANSFORM_TOL: f64 = 1e-10;

/// `Ĝ(ζ) = ∫ φ(y) λ^{Ny} e^{−2πiyζ} dy` by adaptive Gauss–Legendre on the
/// support of `φ`, pre-split so that each panel holds about one
/// oscillation.
pub fn bump_transform(cutoff: usize, lam: f64, zeta: f64, profile: &BumpProfile) -> Result<Complex64> {
    if !(lam > 0.0 && lam <= 1.0) {
        return invalid(format!("λ = {lam} must lie in (0, 1]"));
    }
    let (a, b) = BumpProfile::SUPPORT;
    let log_lam = cutoff as f64 * lam.ln();
    let f = |y: f64| Complex64::from_polar(profile.value(y) * (log_lam * y).exp(), -TAU * y * zeta);
    let panels = ((b - a) * zeta.abs()).ceil().max(1.0) as usize;
    let integrator = AdaptiveIntegrator::new(TRANSFORM_TOL / panels as f64);
    let h = (b - a) / panels as f64;
    (0..panels).try_fold(Complex64::new(0.0, 0.0), |acc, i| {
        let lo = a + i as f64 * h;
        Ok(acc + integrator.integrate(lo, lo + h, f)?)
    })
}

/// The two parts of `S_N(2π/p, 2πq/p, λ)` after Poisson summation in the
/// residue classes modulo `p`:
/// `main = (N/p) Ĝ(0) G_p(q+1)` and
/// `remainder = (N/p) Σ_{ξ≠0} Ĝ(Nξ/p) G_p(q+1+ξ)`, where `G_p(b)` is the
/// quadratic Gauss sum with linear coefficient `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonSplit {
    pub main: Complex64,
    pub remainder: Complex64,
    /// Largest `|ξ|` kept in the remainder.
    pub dual_terms: usize,
}

impl PoissonSplit {
    pub fn total(&self) -> Complex64 {
        self.main + self.remainder
    }
}

/// Dual frequencies are summed until three consecutive `ξ` contribute less
/// than this fraction of `|main|`.
const DUAL_TAIL_TOL: f64 = 1e-13;
const MAX_DUAL_TERMS: usize = 20_000;

pub fn poisson_split(
    cutoff: usize,
    point: RationalPoint,
    lam: f64,
    profile: &BumpProfile,
) -> Result<PoissonSplit> {
    let (p, q) = (point.p, point.q as i64);
    let scale = cutoff as f64 / p as f64;
    let gauss = |b: i64| -> Result<Complex64> {
        Ok(GaussSumClosedForm::for_coefficient(p, b, GAUSS_CONVENTION)?.value())
    };
    let main = scale * bump_transform(cutoff, lam, 0.0, profile)? * gauss(q + 1)?;
    let mut remainder = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for xi in 1..=MAX_DUAL_TERMS {
        // G is real, so Ĝ(−ζ) is the conjugate of Ĝ(ζ).
        let g = bump_transform(cutoff, lam, scale * xi as f64, profile)?;
        let xi = xi as i64;
        let term = scale * (g * gauss(q + 1 + xi)? + g.conj() * gauss(q + 1 - xi)?);
        remainder += term;
        let bound = 2.0 * scale * g.norm() * (p as f64).sqrt();
        quiet = if bound < DUAL_TAIL_TOL * main.norm() { quiet + 1 } else { 0 };
        if quiet == 3 {
            return Ok(PoissonSplit {
                main,
                remainder,
                dual_terms: xi as usize,
            });
        }
    }
    Err(Error::Quadrature(format!(
        "dual sum for p = {p} did not settle within {MAX_DUAL_TERMS} terms"
    )))
}
