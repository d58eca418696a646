//! Spectral numerics for linear and cubic Schrödinger flows on the unit
//! two-sphere.
//!
//! The crate is organised bottom-up:
//!
//! * [`sphere`]: real spherical harmonics, Gauss–Legendre × uniform product
//!   quadrature, spectral transforms, norms and the linear propagator.
//! * [`number_theory`]: Möbius/totient sieves, the average order of
//!   `φ(n)/n`, and quadratic Gauss sums.
//! * [`counterexample`]: the highest-weight family `f_N`, its Schrödinger
//!   evolution `S_N`, the Poisson main/remainder split, the exceptional arc
//!   system and the maximal-function scaling.
//! * [`randomization`]: Gaussian random initial data and Monte-Carlo moment
//!   estimators.
//! * [`nls`]: the truncated Wick-ordered cubic NLS, its resonance
//!   decomposition, the second Picard iterate and convergence probes.
//!
//! All surface integrals use the *unit-mass* measure on the sphere, so that
//! `Σ_k b_{n,k}(x)² = 2n + 1` holds pointwise.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counterexample;
pub mod error;
pub mod number_theory;
pub mod nls;
pub mod quadrature;
pub mod randomization;
pub mod regression;
pub mod sphere;

pub use error::{Error, Result};
pub use num_complex::Complex64;
