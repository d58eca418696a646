use crate::error::{invalid, Result};

use super::MEAN_TOTIENT_RATIO;

/// Largest table the linear sieve will build.
pub const SIEVE_LIMIT: usize = 10_000_000;

/// Möbius function and Euler totient for `1..=limit`, by a linear sieve.
/// Immutable once built.
#[derive(Debug, Clone)]
pub struct ArithmeticSieve {
    mu: Vec<i8>,
    phi: Vec<u32>,
}

impl ArithmeticSieve {
    pub fn new(limit: usize) -> Result<Self> {
        if limit > SIEVE_LIMIT {
            return invalid(format!("sieve limit {limit} exceeds {SIEVE_LIMIT}"));
        }
        let mut mu = vec![0i8; limit + 1];
        let mut phi = vec![0u32; limit + 1];
        let mut primes: Vec<usize> = Vec::new();
        let mut composite = vec![false; limit + 1];
        if limit >= 1 {
            mu[1] = 1;
            phi[1] = 1;
        }
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i);
                mu[i] = -1;
                phi[i] = (i - 1) as u32;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > limit {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    mu[ip] = 0;
                    phi[ip] = phi[i] * p as u32;
                    break;
                }
                mu[ip] = -mu[i];
                phi[ip] = phi[i] * (p as u32 - 1);
            }
        }
        Ok(Self { mu, phi })
    }

    pub fn limit(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn mobius(&self, n: usize) -> i8 {
        assert!(n >= 1 && n <= self.limit());
        self.mu[n]
    }

    pub fn totient(&self, n: usize) -> u64 {
        assert!(n >= 1 && n <= self.limit());
        self.phi[n] as u64
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function by factorisation.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n ≥ 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler totient by factorisation.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient is defined for n ≥ 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `Σ_{n ≤ λ} φ(n)/n`.
pub fn totient_average(lambda: f64) -> Result<f64> {
    if !(lambda >= 1.0) {
        return invalid(format!("λ = {lambda} must be at least 1"));
    }
    let top = lambda.floor() as usize;
    let sieve = ArithmeticSieve::new(top)?;
    Ok((1..=top).map(|n| sieve.totient(n) as f64 / n as f64).sum())
}

/// `#{n ∈ [aλ, bλ] : φ(n) ≥ (6/π² − c₀) n}`.
pub fn totient_density(a: f64, b: f64, lambda: f64, c0: f64) -> Result<u64> {
    if !(a > 0.0 && b > a) {
        return invalid(format!("need 0 < a < b, got a = {a}, b = {b}"));
    }
    if !(c0 > 0.0 && c0 < MEAN_TOTIENT_RATIO) {
        return invalid(format!("c0 = {c0} must lie in (0, 6/π²)"));
    }
    let lo = (a * lambda).ceil().max(1.0) as usize;
    let hi = (b * lambda).floor() as usize;
    if hi < lo {
        return Ok(0);
    }
    let sieve = ArithmeticSieve::new(hi)?;
    let threshold = MEAN_TOTIENT_RATIO - c0;
    Ok((lo..=hi)
        .filter(|&n| sieve.totient(n) as f64 >= threshold * n as f64)
        .count() as u64)
}
