use num_complex::Complex64;

use crate::error::{Error, Result};

/// Degree/order label of a real spherical harmonic, `|k| ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub n: usize,
    pub k: i64,
}

impl ModeIndex {
    pub fn new(n: usize, k: i64) -> Result<Self> {
        if k.unsigned_abs() as usize > n {
            return Err(Error::InvalidMode { n, k });
        }
        Ok(Self { n, k })
    }

    /// Position in the flat coefficient layout `n² + n + k`.
    #[inline]
    pub fn flat(self) -> usize {
        (self.n * self.n + self.n).wrapping_add_signed(self.k as isize)
    }

    pub fn from_flat(i: usize) -> Self {
        let n = (i as f64).sqrt() as usize;
        // guard against rounding in the square root
        let n = if (n + 1) * (n + 1) <= i { n + 1 } else if n * n > i { n - 1 } else { n };
        Self {
            n,
            k: i as i64 - (n * n + n) as i64,
        }
    }
}

/// Number of coefficients of a field band-limited to degree `cutoff`.
#[inline]
pub fn mode_count(cutoff: usize) -> usize {
    (cutoff + 1) * (cutoff + 1)
}

/// Complex coefficients `c_{n,k}`, `n ≤ cutoff`, against the real
/// orthonormal basis `b_{n,k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    cutoff: usize,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(cutoff: usize) -> Self {
        Self {
            cutoff,
            coeffs: vec![Complex64::default(); mode_count(cutoff)],
        }
    }

    pub fn from_coeffs(cutoff: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != mode_count(cutoff) {
            return Err(Error::InvalidArgument(format!(
                "cutoff {cutoff} needs {} coefficients, got {}",
                mode_count(cutoff),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(Self { cutoff, coeffs })
    }

    /// Single basis function `b_{n,k}` with unit coefficient.
    pub fn mode(cutoff: usize, idx: ModeIndex) -> Self {
        let mut f = Self::zeros(cutoff);
        f.coeffs[idx.flat()] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn get(&self, n: usize, k: i64) -> Complex64 {
        self.coeffs[ModeIndex { n, k }.flat()]
    }

    pub fn set(&mut self, n: usize, k: i64, value: Complex64) {
        self.coeffs[ModeIndex { n, k }.flat()] = value;
    }

    /// Coefficients of degree `n` in order `k = -n..=n`.
    pub fn shell(&self, n: usize) -> &[Complex64] {
        &self.coeffs[n * n..(n + 1) * (n + 1)]
    }

    pub fn shell_mut(&mut self, n: usize) -> &mut [Complex64] {
        &mut self.coeffs[n * n..(n + 1) * (n + 1)]
    }

    /// `Σ |c_{n,k}|²`, which is the squared `L²` norm under unit-mass measure.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn shell_norm_sq(&self, n: usize) -> f64 {
        self.shell(n).iter().map(|c| c.norm_sqr()).sum()
    }

    /// Spectral projection onto degrees `≤ cutoff` (or zero-padding when
    /// `cutoff` is larger).
    pub fn truncate(&self, cutoff: usize) -> Self {
        let mut out = Self::zeros(cutoff);
        let m = mode_count(cutoff.min(self.cutoff));
        out.coeffs[..m].copy_from_slice(&self.coeffs[..m]);
        out
    }

    /// Keeps only the degrees for which `keep(n)` holds.
    pub fn filter_shells(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        let mut out = self.clone();
        for n in 0..=self.cutoff {
            if !keep(n) {
                out.shell_mut(n).fill(Complex64::default());
            }
        }
        out
    }

    /// `self + scale · other`; both must share the same cutoff.
    pub fn axpy(&mut self, scale: Complex64, other: &Self) -> Result<()> {
        self.check_cutoff(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += scale * b;
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(Complex64::new(-1.0, 0.0), other)?;
        Ok(out)
    }

    pub fn scale(&mut self, s: Complex64) {
        self.coeffs.iter_mut().for_each(|c| *c *= s);
    }

    /// `L²` inner product `Σ a · conj(b)`, linear in the first argument.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_cutoff(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_cutoff(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub(crate) fn check_cutoff(&self, other: &Self) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch {
                expected: self.cutoff,
                found: other.cutoff,
            });
        }
        Ok(())
    }
}

/// Complex samples at the nodes of a [`super::SphereQuadrature`], stored
/// ring by ring (polar node major, azimuth minor).
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub polar_count: usize,
    pub azimuth_count: usize,
    pub values: Vec<Complex64>,
}

impl GridField {
    pub fn zeros(polar_count: usize, azimuth_count: usize) -> Self {
        Self {
            polar_count,
            azimuth_count,
            values: vec![Complex64::default(); polar_count * azimuth_count],
        }
    }

    pub fn ring(&self, i: usize) -> &[Complex64] {
        &self.values[i * self.azimuth_count..(i + 1) * self.azimuth_count]
    }

    pub fn ring_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.values[i * self.azimuth_count..(i + 1) * self.azimuth_count]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// A point on the unit sphere in polar/azimuthal coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    /// Polar angle in `[0, π]`, measured from the north pole.
    pub polar: f64,
    /// Azimuth in `[0, 2π)`.
    pub azimuth: f64,
}

impl SpherePoint {
    pub fn new(polar: f64, azimuth: f64) -> Self {
        Self { polar, azimuth }
    }

    pub fn north_pole() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn from_cartesian(x: [f64; 3]) -> Self {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let polar = (x[0].hypot(x[1])).atan2(x[2]);
        let azimuth = x[1].atan2(x[0]).rem_euclid(std::f64::consts::TAU);
        debug_assert!(r > 0.0);
        Self { polar, azimuth }
    }

    pub fn to_cartesian(self) -> [f64; 3] {
        let (s, c) = self.polar.sin_cos();
        [s * self.azimuth.cos(), s * self.azimuth.sin(), c]
    }
}
