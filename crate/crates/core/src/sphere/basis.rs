use std::f64::consts::SQRT_2;

use super::{legendre, ModeIndex, SpherePoint, MAX_DEGREE};
use crate::error::{Error, Result};

/// Real orthonormal spherical harmonic `b_{n,k}` at `point`.
///
/// `b_{n,0} = Q_n^0(cos θ)`, `b_{n,k} = √2 Q_n^k(cos θ) cos(kφ)` for
/// `k > 0` and `√2 Q_n^{|k|}(cos θ) sin(|k|φ)` for `k < 0`.
pub fn eval_basis(idx: ModeIndex, point: SpherePoint) -> Result<f64> {
    if idx.n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(idx.n));
    }
    if idx.k.unsigned_abs() as usize > idx.n {
        return Err(Error::InvalidMode { n: idx.n, k: idx.k });
    }
    let (s, x) = point.polar.sin_cos();
    let m = idx.k.unsigned_abs() as usize;
    let q = legendre::value(idx.n, m, x, s.abs());
    Ok(match idx.k {
        0 => q,
        k if k > 0 => SQRT_2 * q * (m as f64 * point.azimuth).cos(),
        _ => SQRT_2 * q * (m as f64 * point.azimuth).sin(),
    })
}

/// All `b_{n,k}(point)` of one degree, ordered `k = -n..=n`.
pub fn basis_values(n: usize, point: SpherePoint) -> Result<Vec<f64>> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let (s, x) = point.polar.sin_cos();
    let mut out = vec![0.0; 2 * n + 1];
    for m in 0..=n {
        let q = legendre::value(n, m, x, s.abs());
        if m == 0 {
            out[n] = q;
        } else {
            let (sin_m, cos_m) = (m as f64 * point.azimuth).sin_cos();
            out[n + m] = SQRT_2 * q * cos_m;
            out[n - m] = SQRT_2 * q * sin_m;
        }
    }
    Ok(out)
}

/// `Σ_{|k|≤n} b_{n,k}(x)²`; identically `2n + 1` (local Weyl law).
pub fn weyl_sum(n: usize, point: SpherePoint) -> Result<f64> {
    Ok(basis_values(n, point)?.iter().map(|b| b * b).sum())
}
