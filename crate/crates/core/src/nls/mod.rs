//! Galerkin truncation of the Wick-ordered cubic Schrödinger equation
//!
//! ```text
//! i∂ₜu_N + (Δ − 1)u_N = P_{≤N}[(|u_N|² − 2‖u_N‖²_{L²}) u_N]
//! ```
//!
//! on the sphere: the dealiased nonlinearity and its resonance
//! decomposition, an integrating-factor RK4 solver, the gauge map to the
//! plain cubic equation, dyadic increments `u_N − u_{N/2}`, the second
//! Picard iterate and a pointwise-convergence probe for random data.

mod dyadic;
mod evolve;
mod picard;
mod pointwise;
mod wick;

pub use dyadic::{dyadic_decomposition, dyadic_increment, truncated_solution, DyadicDecomposition};
pub use evolve::{
    evolve, evolve_through, gauge_transform, Equation, EvolutionConfig, Propagator, Trajectory,
    TruncatedState, GROWTH_LIMIT,
};
pub use picard::{
    picard_growth, second_picard, PicardGrowth, PicardGrowthRow, PicardIterate, PicardRule,
};
pub use pointwise::{
    nls_pointwise_experiment, PointwiseConfig, PointwiseReport, PointwiseRow, TruncationEntry,
};
pub use wick::{
    resonance_split, wick_nonlinearity, CubicOperator, Nonlinearity, ResonanceSplit,
    MAX_RESONANCE_CUTOFF,
};
