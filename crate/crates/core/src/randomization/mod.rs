//! Gaussian random initial data and Monte-Carlo checks of the
//! probabilistic estimates it satisfies: shell moments, projected moments
//! of the linear evolution, Khinchine and large-deviation bounds,
//! hypercontractivity of Wiener chaos, and an empirical probe of
//! `e^{it(Δ−1)}φ → φ` as `t → 0`.

mod convergence;
mod data;
mod moments;
mod rng;

pub use convergence::{
    linear_convergence_experiment, LinearConvergenceReport, LinearExperimentConfig, ScaleRow,
    ShellSup,
};
pub(crate) use convergence::{median, window_times};
pub use data::{
    dyadic_shell, project_shell, sample_data, sample_data_at, RandomDataSpec, ShellFunction,
};
pub use moments::{
    complex_gaussian_norm, khinchine_check, projected_moment_check, projected_moment_table,
    projected_second_moment, shell_moment_check, tail_check, wiener_chaos_check, ChaosCoefficients,
    ChaosRatio, MomentEstimate, ProjectedMoment, TailCurve, CONFIDENCE_Z, MIN_SAMPLES,
};
pub use rng::{mode_gaussian, GaussianStream};
