/// Smooth plateau cutoff: supported in `(1/2, 5/2)`, identically one on
/// `[3/4, 9/4]`, built from `h(x) = e^{−1/x}`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BumpProfile;

fn h(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Smooth step: 0 for `x ≤ 0`, 1 for `x ≥ 1`.
fn step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = h(x);
        a / (a + h(1.0 - x))
    }
}

impl BumpProfile {
    pub const SUPPORT: (f64, f64) = (0.5, 2.5);
    pub const PLATEAU: (f64, f64) = (0.75, 2.25);

    pub fn value(&self, x: f64) -> f64 {
        let (a, b) = Self::SUPPORT;
        let ramp = Self::PLATEAU.0 - a;
        step((x - a) / ramp) * step((b - x) / ramp)
    }

    /// Degrees `n` with `φ(n/N) ≠ 0`, i.e. `N/2 < n < 5N/2`.
    pub fn degree_range(&self, cutoff: usize) -> std::ops::Range<usize> {
        (cutoff / 2 + 1)..(5 * cutoff).div_ceil(2)
    }

    /// `φ(n/N)` for every `n` in [`Self::degree_range`].
    pub fn weights(&self, cutoff: usize) -> Vec<f64> {
        self.degree_range(cutoff)
            .map(|n| self.value(n as f64 / cutoff as f64))
            .collect()
    }
}
