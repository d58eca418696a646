use std::f64::consts::TAU;

use crate::error::{invalid, Result};

/// Open arc `(center − radius, center + radius)` on the circle `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub center: f64,
    pub radius: f64,
}

impl Arc {
    pub fn contains(&self, theta: f64) -> bool {
        (theta - self.center).abs() < self.radius
    }

    pub fn length(&self) -> f64 {
        2.0 * self.radius
    }
}

/// A finite family of pairwise disjoint open arcs, sorted by center.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSystem {
    arcs: Vec<Arc>,
}

impl IntervalSystem {
    /// Sorts the arcs and verifies that they lie in `[0, 2π)` and do not
    /// overlap.
    pub fn new(mut arcs: Vec<Arc>) -> Result<Self> {
        for a in &arcs {
            if !(a.radius > 0.0) || a.center - a.radius < 0.0 || a.center + a.radius > TAU {
                return invalid(format!("arc {a:?} does not fit in [0, 2π)"));
            }
        }
        arcs.sort_by(|a, b| a.center.total_cmp(&b.center));
        for w in arcs.windows(2) {
            if w[0].center + w[0].radius > w[1].center - w[1].radius {
                return invalid(format!("arcs {:?} and {:?} overlap", w[0], w[1]));
            }
        }
        Ok(Self { arcs })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(Arc::length).sum()
    }

    /// Smallest gap between consecutive arcs (infinite for fewer than two).
    pub fn min_gap(&self) -> f64 {
        self.arcs
            .windows(2)
            .map(|w| (w[1].center - w[1].radius) - (w[0].center + w[0].radius))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, theta: f64) -> bool {
        let i = self.arcs.partition_point(|a| a.center < theta);
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter_map(|j| self.arcs.get(j))
            .any(|a| a.contains(theta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_disjoint_and_measures() {
        let s = IntervalSystem::new(vec![
            Arc { center: 2.0, radius: 0.1 },
            Arc { center: 1.0, radius: 0.2 },
        ])
        .unwrap();
        assert_eq!(s.arcs()[0].center, 1.0);
        assert!((s.total_length() - 0.6).abs() < 1e-15);
        assert!((s.min_gap() - 0.7).abs() < 1e-12);
        assert!(s.contains(1.15) && s.contains(2.05) && !s.contains(1.5));
    }

    #[test]
    fn rejects_overlap_and_escape() {
        let overlap = vec![
            Arc { center: 1.0, radius: 0.3 },
            Arc { center: 1.5, radius: 0.3 },
        ];
        assert!(IntervalSystem::new(overlap).is_err());
        assert!(IntervalSystem::new(vec![Arc { center: 0.05, radius: 0.1 }]).is_err());
    }
}
