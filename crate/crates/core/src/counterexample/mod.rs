//! Deterministic counterexample to the maximal estimate below
//! `s = ½ − 1/(2r)`.
//!
//! The data are `f_N = Σ_n φ(n/N) (x₁ + i x₂)ⁿ`. Writing `x₁ + i x₂ = λe^{iθ}`
//! the evolution under `e^{itΔ}` is the one-variable sum
//! `S_N(t, θ, λ) = Σ_n φ(n/N) e^{itn(n+1)} e^{inθ} λⁿ`. At rational
//! time/angle pairs `(2π/p, 2πq/p)` the sum factors through a quadratic
//! Gauss sum of size `√p`, which produces the lower bound
//! `|S_N| ≳ N^{3/4} λ^N` on a family of arcs of total length `∼ 1`.

mod exceptional;
mod maximal;
mod profile;
mod sum;

pub use exceptional::{build_exceptional_set, ExceptionalArc, ExceptionalSet, MAX_TIME, MIN_CUTOFF};
pub use maximal::{
    data_sobolev_norm, maximal_norm, maximal_norm_ratio, maximal_scan, mean_value_perturbation,
    radial_window, MaximalNorm, MaximalScanResult, NormConfig, Perturbation, ScanPoint, TimeMode,
    RADIAL_EPSILON,
};
pub use profile::BumpProfile;
pub use sum::{
    bump_transform, poisson_split, schrodinger_sum, schrodinger_sum_rational, PoissonSplit,
    RationalPoint,
};
