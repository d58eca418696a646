//! Associated Legendre functions normalised for the unit-mass sphere.
//!
//! `Q_n^m(x) = √((2n+1)(n−m)!/(n+m)!) P_n^m(x)` (no Condon–Shortley
//! phase), so that `½∫₋₁¹ Q_n^m(x)² dx = 1`. Values are produced by the
//! forward recurrence in degree. The sectoral seed `Q_m^m ∝ sin^m θ` is
//! carried with a binary exponent so that it cannot underflow before the
//! recurrence has grown it back into range.

const SCALE_BITS: i32 = 600;
const RESCALE_UP: f64 = 4.149515568880993e180; // 2^600
const RESCALE_DOWN: f64 = 2.409919865102884e-181; // 2^-600
const THRESHOLD: f64 = 2.037035976334486e90; // 2^300

/// Sectoral seed `Q_m^m(x) = Π_{i≤m} √((2i+1)/(2i)) · sin^m θ`, returned
/// as `(mantissa, exponent)` with value `mantissa · 2^(600·exponent)`.
fn sectoral(m: usize, sin: f64) -> (f64, i32) {
    let mut v = 1.0;
    let mut e = 0;
    for i in 1..=m {
        let fi = i as f64;
        v *= ((2.0 * fi + 1.0) / (2.0 * fi)).sqrt() * sin;
        if v != 0.0 && v.abs() < RESCALE_DOWN {
            v *= RESCALE_UP;
            e -= 1;
        }
    }
    (v, e)
}

#[inline]
fn unscale(v: f64, e: i32) -> f64 {
    if e == 0 {
        v
    } else {
        v * 2f64.powi(SCALE_BITS * e)
    }
}

/// Recurrence coefficients for `Q_n^m = a x Q_{n-1}^m − b Q_{n-2}^m`.
#[inline]
fn coeffs(n: usize, m: usize) -> (f64, f64) {
    let nf = n as f64;
    let mf = m as f64;
    let d = nf * nf - mf * mf;
    let a = ((4.0 * nf * nf - 1.0) / d).sqrt();
    let b = ((2.0 * nf + 1.0) * (nf - 1.0 - mf) * (nf - 1.0 + mf) / ((2.0 * nf - 3.0) * d)).sqrt();
    (a, b)
}

/// Fills `out[j] = Q_{m+j}^m(x)` for `j = 0..out.len()`.
///
/// `sin` must be `√(1 − x²)`; passing it separately keeps precision near the
/// poles.
pub fn column(m: usize, x: f64, sin: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let (mut cur, mut e) = sectoral(m, sin);
    out[0] = unscale(cur, e);
    if out.len() == 1 {
        return;
    }
    let mut prev = cur;
    cur = (2.0 * m as f64 + 3.0).sqrt() * x * prev;
    out[1] = unscale(cur, e);
    for (j, slot) in out.iter_mut().enumerate().skip(2) {
        let n = m + j;
        let (a, b) = coeffs(n, m);
        let next = a * x * cur - b * prev;
        prev = cur;
        cur = next;
        if e < 0 && cur.abs() > THRESHOLD {
            cur *= RESCALE_DOWN;
            prev *= RESCALE_DOWN;
            e += 1;
        }
        *slot = unscale(cur, e);
    }
}

/// Single value `Q_n^m(x)`; `O(n)` work.
pub fn value(n: usize, m: usize, x: f64, sin: f64) -> f64 {
    assert!(m <= n, "order {m} exceeds degree {n}");
    let (mut cur, mut e) = sectoral(m, sin);
    if n == m {
        return unscale(cur, e);
    }
    let mut prev = cur;
    cur *= (2.0 * m as f64 + 3.0).sqrt() * x;
    for deg in m + 2..=n {
        let (a, b) = coeffs(deg, m);
        let next = a * x * cur - b * prev;
        prev = cur;
        cur = next;
        if e < 0 && cur.abs() > THRESHOLD {
            cur *= RESCALE_DOWN;
            prev *= RESCALE_DOWN;
            e += 1;
        }
    }
    unscale(cur, e)
}

/// Offset of column `m` inside a packed triangle of degree `nmax`.
#[inline]
pub fn packed_offset(nmax: usize, m: usize) -> usize {
    m * (nmax + 1) - m * m.saturating_sub(1) / 2
}

/// Length of a packed triangle `{(n, m) : m ≤ n ≤ nmax}`.
#[inline]
pub fn packed_len(nmax: usize) -> usize {
    (nmax + 1) * (nmax + 2) / 2
}

/// All `Q_n^m(x)`, `0 ≤ m ≤ n ≤ nmax`, packed column by column
/// (see [`packed_offset`]).
pub fn triangle(nmax: usize, x: f64, sin: f64) -> Vec<f64> {
    let mut out = vec![0.0; packed_len(nmax)];
    fill_triangle(nmax, x, sin, &mut out);
    out
}

pub fn fill_triangle(nmax: usize, x: f64, sin: f64, out: &mut [f64]) {
    debug_assert_eq!(out.len(), packed_len(nmax));
    for m in 0..=nmax {
        let off = packed_offset(nmax, m);
        column(m, x, sin, &mut out[off..off + nmax + 1 - m]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;

    #[test]
    fn packed_offsets_are_contiguous() {
        let nmax = 7;
        let mut expect = 0;
        for m in 0..=nmax {
            assert_eq!(packed_offset(nmax, m), expect);
            expect += nmax + 1 - m;
        }
        assert_eq!(expect, packed_len(nmax));
    }

    #[test]
    fn low_degree_closed_forms() {
        let x: f64 = 0.3;
        let s = (1.0 - x * x).sqrt();
        assert!((value(0, 0, x, s) - 1.0).abs() < 1e-15);
        assert!((value(1, 0, x, s) - 3f64.sqrt() * x).abs() < 1e-15);
        assert!((value(1, 1, x, s) - 1.5f64.sqrt() * s).abs() < 1e-15);
        // P_2 = (3x² − 1)/2
        assert!((value(2, 0, x, s) - 5f64.sqrt() * 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-14);
        // P_2^1 = 3 x s, normalisation √(5·1/6)
        assert!((value(2, 1, x, s) - (5.0f64 / 6.0).sqrt() * 3.0 * x * s).abs() < 1e-14);
    }

    #[test]
    fn columns_are_orthonormal() {
        let nmax = 30;
        let gl = GaussLegendre::new(nmax + 1);
        for m in [0usize, 1, 5, 17] {
            let len = nmax + 1 - m;
            let cols: Vec<Vec<f64>> = gl
                .nodes
                .iter()
                .map(|&x| {
                    let mut c = vec![0.0; len];
                    column(m, x, (1.0 - x * x).sqrt(), &mut c);
                    c
                })
                .collect();
            for a in 0..len {
                for b in 0..len {
                    let ip: f64 = 0.5
                        * cols
                            .iter()
                            .zip(&gl.weights)
                            .map(|(c, w)| w * c[a] * c[b])
                            .sum::<f64>();
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((ip - expect).abs() < 1e-12, "m={m} a={a} b={b} ip={ip}");
                }
            }
        }
    }

    #[test]
    fn deep_sectoral_seed_survives_underflow() {
        // sin^m θ underflows for m in the thousands, yet the addition
        // theorem Σ_m (2 − δ_{m0}) Q_n^m(x)² = 2n + 1 needs every order.
        let n = 4096;
        let theta: f64 = 0.9;
        let (s, x) = theta.sin_cos();
        let (_, e) = sectoral(3000, s);
        assert!(e < 0, "seed should have needed rescaling");
        let tri = triangle(n, x, s);
        let mut sum = 0.0;
        for m in 0..=n {
            let q = tri[packed_offset(n, m) + n - m];
            sum += if m == 0 { q * q } else { 2.0 * q * q };
        }
        assert!((sum - (2 * n + 1) as f64).abs() < 1e-8 * n as f64, "{sum}");
    }

    #[test]
    fn column_matches_single_values() {
        let x: f64 = -0.77;
        let s = (1.0 - x * x).sqrt();
        let mut c = vec![0.0; 40];
        column(6, x, s, &mut c);
        for (j, v) in c.iter().enumerate() {
            let single = value(6 + j, 6, x, s);
            assert!((v - single).abs() <= 1e-13 * v.abs().max(1.0));
        }
    }
}
