//! Arithmetic functions used by the Gauss-sum counterexample: Möbius and
//! Euler totient (by sieve and by factorisation), the average order of
//! `φ(n)/n`, quadratic Gauss sums, and systems of disjoint arcs.

mod gauss;
mod intervals;
mod sieve;

pub use gauss::{
    calibrate_convention, gauss_sum_closed, gauss_sum_direct, GaussConvention, GaussSumClosedForm,
    GAUSS_CONVENTION,
};
pub use intervals::{Arc, IntervalSystem};
pub use sieve::{
    gcd, mobius, totient, totient_average, totient_density, ArithmeticSieve, SIEVE_LIMIT,
};

/// `6/π²`, the mean value of `φ(n)/n`.
pub const MEAN_TOTIENT_RATIO: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
