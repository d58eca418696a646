use std::f64::consts::TAU;

use num_complex::Complex64;

use super::gcd;
use crate::error::{invalid, Result};

/// Sign conventions of the closed form
/// `Σ_{n<p} e^{2πi(n² + bn)/p} = ω_p √p · e^{σ 2πi m b²/p}`, `4m ≡ 1 (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussConvention {
    /// `ω_p` for `p ≡ 3 (mod 4)`; `ω_p = 1` for `p ≡ 1 (mod 4)`.
    pub omega_3_mod_4: Complex64,
    /// `σ ∈ {+1, −1}`.
    pub exponent_sign: i64,
}

/// Convention that agrees with direct summation (see
/// [`calibrate_convention`]). It is the complex conjugate of the form
/// `ω_p = −i`, `σ = +1` that is sometimes quoted.
pub const GAUSS_CONVENTION: GaussConvention = GaussConvention {
    omega_3_mod_4: Complex64::new(0.0, 1.0),
    exponent_sign: -1,
};

#[inline]
fn root_of_unity(r: u64, p: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (r % p) as f64 / p as f64)
}

/// `Σ_{n=0}^{p−1} e^{2πi(n² + bn)/p}` by direct summation with exact
/// integer reduction of the exponent.
pub fn gauss_sum_direct(p: u64, b: i64) -> Complex64 {
    assert!(p >= 1);
    let b = b.rem_euclid(p as i64) as u64;
    (0..p)
        .map(|n| {
            let r = ((n as u128 * n as u128 + b as u128 * n as u128) % p as u128) as u64;
            root_of_unity(r, p)
        })
        .sum()
}

/// Closed-form data for the Gauss sum with linear coefficient `b = q + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSumClosedForm {
    pub p: u64,
    pub b: i64,
    pub omega_p: Complex64,
    /// `4m ≡ 1 (mod p)`, `0 ≤ m < p`.
    pub m: u64,
    pub convention: GaussConvention,
}

impl GaussSumClosedForm {
    /// Closed form for arbitrary linear coefficient `b` and odd `p ≥ 3`.
    pub fn for_coefficient(p: u64, b: i64, convention: GaussConvention) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) {
            return invalid(format!("modulus {p} must be odd and at least 3"));
        }
        // 4 · (p + 1)/4 ≡ 1 or 4 · (3p + 1)/4 ≡ 1
        let m = if p % 4 == 3 { (p + 1) / 4 } else { (3 * p + 1) / 4 } % p;
        let omega_p = if p % 4 == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            convention.omega_3_mod_4
        };
        Ok(Self {
            p,
            b,
            omega_p,
            m,
            convention,
        })
    }

    /// `m b² mod p`, the exponent numerator.
    pub fn exponent(&self) -> u64 {
        let b = self.b.rem_euclid(self.p as i64) as u128;
        ((self.m as u128 * b * b) % self.p as u128) as u64
    }

    pub fn value(&self) -> Complex64 {
        let e = self.exponent();
        let signed = if self.convention.exponent_sign < 0 {
            (self.p - e) % self.p
        } else {
            e
        };
        self.omega_p * (self.p as f64).sqrt() * root_of_unity(signed, self.p)
    }
}

/// Closed form at a rational point: odd `p ≥ 3`, even `q`, `gcd(p, q) = 1`,
/// with linear coefficient `q + 1`.
pub fn gauss_sum_closed(p: u64, q: i64) -> Result<GaussSumClosedForm> {
    if p < 3 || p.is_multiple_of(2) {
        return invalid(format!("p = {p} must be odd and at least 3"));
    }
    if q % 2 != 0 {
        return invalid(format!("q = {q} must be even"));
    }
    if gcd(p, q.unsigned_abs()) != 1 {
        return invalid(format!("gcd({p}, {q}) ≠ 1"));
    }
    GaussSumClosedForm::for_coefficient(p, q + 1, GAUSS_CONVENTION)
}

/// Picks, among the four sign choices `ω_p ∈ {±i}`, `σ ∈ {±1}`, the one
/// that reproduces direct summation for every odd `p < 60` and residue `b`.
pub fn calibrate_convention() -> Option<GaussConvention> {
    let candidates = [
        (Complex64::new(0.0, 1.0), 1),
        (Complex64::new(0.0, 1.0), -1),
        (Complex64::new(0.0, -1.0), 1),
        (Complex64::new(0.0, -1.0), -1),
    ];
    candidates
        .into_iter()
        .map(|(omega_3_mod_4, exponent_sign)| GaussConvention {
            omega_3_mod_4,
            exponent_sign,
        })
        .find(|conv| {
            (3..60u64).step_by(2).all(|p| {
                (0..p as i64).all(|b| {
                    let closed = GaussSumClosedForm::for_coefficient(p, b, *conv)
                        .unwrap()
                        .value();
                    (closed - gauss_sum_direct(p, b)).norm() < 1e-9
                })
            })
        })
}
