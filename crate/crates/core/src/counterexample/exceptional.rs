use std::f64::consts::{PI, TAU};

use super::RationalPoint;
use crate::error::{Error, Result};
use crate::number_theory::{gcd, Arc, IntervalSystem};

/// Upper end of the time window `[0, MAX_TIME]` over which the maximal
/// function is taken.
pub const MAX_TIME: f64 = 1.0;

/// Smallest cutoff accepted by [`build_exceptional_set`].
pub const MIN_CUTOFF: usize = 64;

/// One arc `E(N, p, q)` together with the rational point at its center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceptionalArc {
    pub point: RationalPoint,
    pub arc: Arc,
}

/// The union `ℰ` of the arcs `E(N, p, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalSet {
    pub cutoff: usize,
    pub c0: u64,
    pub radius: f64,
    arcs: Vec<ExceptionalArc>,
    system: IntervalSystem,
}

impl ExceptionalSet {
    /// Arcs sorted by center.
    pub fn arcs(&self) -> &[ExceptionalArc] {
        &self.arcs
    }

    pub fn system(&self) -> &IntervalSystem {
        &self.system
    }

    pub fn measure(&self) -> f64 {
        self.system.total_length()
    }

    /// Odd moduli contributing at least one arc, ascending.
    pub fn moduli(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.arcs.iter().map(|a| a.point.p()).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn count_for(&self, p: u64) -> usize {
        self.arcs.iter().filter(|a| a.point.p() == p).count()
    }
}

/// Odd `p` with `√N/C₀ < p < C₀√N` and `2π/p ≤ MAX_TIME` (so that the time
/// `2π/p` lies in the window).
fn moduli_window(cutoff: usize, c0: u64) -> impl Iterator<Item = u64> {
    let root = (cutoff as f64).sqrt();
    let (lo, hi) = (root / c0 as f64, root * c0 as f64);
    let min_p = (TAU / MAX_TIME).ceil() as u64;
    (3..hi.ceil() as u64)
        .filter(move |&p| p % 2 == 1 && p >= min_p && (p as f64) > lo && (p as f64) < hi)
}

/// Collects every arc of radius `1/(10 C₀² π N)` centered at `2πq/p` with
/// `p` odd in the window, `q` even and coprime to `p`, `2πq/p ∈ (0, π)`,
/// and verifies pairwise disjointness.
pub fn build_exceptional_set(cutoff: usize, c0: u64) -> Result<ExceptionalSet> {
    if cutoff < MIN_CUTOFF {
        return Err(Error::InvalidArgument(format!(
            "cutoff {cutoff} is below the supported minimum {MIN_CUTOFF}"
        )));
    }
    if c0 < 2 {
        return Err(Error::InvalidArgument(format!("C0 = {c0} must be at least 2")));
    }
    let radius = 1.0 / (10.0 * (c0 * c0) as f64 * PI * cutoff as f64);
    let mut arcs = Vec::new();
    for p in moduli_window(cutoff, c0) {
        for q in (2..p.div_ceil(2)).step_by(2) {
            if gcd(p, q) != 1 {
                continue;
            }
            let point = RationalPoint::new(p, q)?;
            arcs.push(ExceptionalArc {
                point,
                arc: Arc {
                    center: point.angle(),
                    radius,
                },
            });
        }
    }
    if arcs.is_empty() {
        return Err(Error::EmptyWindow { n: cutoff, c0 });
    }
    let system = IntervalSystem::new(arcs.iter().map(|a| a.arc).collect())?;
    arcs.sort_by(|a, b| a.arc.center.total_cmp(&b.arc.center));
    Ok(ExceptionalSet {
        cutoff,
        c0,
        radius,
        arcs,
        system,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cutoffs_rejected() {
        assert!(build_exceptional_set(32, 4).is_err());
        assert!(build_exceptional_set(64, 1).is_err());
    }

    #[test]
    fn arcs_are_inside_the_upper_half() {
        let e = build_exceptional_set(256, 4).unwrap();
        for a in e.arcs() {
            assert!(a.arc.center > 0.0 && a.arc.center < PI);
            assert!(TAU / a.point.p() as f64 <= MAX_TIME);
        }
        assert_eq!(e.system().len(), e.arcs().len());
    }

    #[test]
    fn per_modulus_count_matches_enumeration() {
        let e = build_exceptional_set(1024, 4).unwrap();
        for p in e.moduli() {
            let brute = (1..p)
                .filter(|&q| q % 2 == 0 && 2 * q < p && gcd(p, q) == 1)
                .count();
            assert_eq!(e.count_for(p), brute);
        }
    }
}
