use std::f64::consts::SQRT_2;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::legendre::{self, packed_len, packed_offset};
use super::{GridField, SpectralField, SphereQuadrature};
use crate::error::{Error, Result};

/// Above this many stored Legendre values the table is rebuilt per ring.
const MAX_STORED_TABLE: usize = 24 << 20;

/// Dense spherical-harmonic transform pair for a fixed cutoff and
/// quadrature.
///
/// Legendre sums are done ring pair by ring pair, using the parity
/// `Q_n^m(−x) = (−1)^{n+m} Q_n^m(x)` of the symmetric Gauss nodes; the
/// azimuthal direction goes through an FFT.
#[derive(Clone)]
pub struct SpectralTransform {
    cutoff: usize,
    quad: SphereQuadrature,
    /// One packed triangle per ring with `cos θ ≥ 0`, or empty.
    table: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SpectralTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralTransform")
            .field("cutoff", &self.cutoff)
            .field("polar_count", &self.quad.polar_count())
            .field("azimuth_count", &self.quad.azimuth_count())
            .finish()
    }
}

impl SpectralTransform {
    /// Transform pair whose round trip is exact: requires
    /// `quad.exact_degree() ≥ 2 · cutoff`.
    pub fn new(cutoff: usize, quad: SphereQuadrature) -> Result<Self> {
        let required = 2 * cutoff;
        if quad.exact_degree() < required {
            return Err(Error::Aliasing {
                exact_degree: quad.exact_degree(),
                required,
            });
        }
        Ok(Self::new_unchecked(cutoff, quad))
    }

    /// Builds the pair without the exactness check; `analyze` is then only
    /// a quadrature approximation of the projection.
    pub fn new_unchecked(cutoff: usize, quad: SphereQuadrature) -> Self {
        let half = quad.polar_count().div_ceil(2);
        let tri = packed_len(cutoff);
        let table = if half * tri <= MAX_STORED_TABLE {
            let mut table = vec![0.0; half * tri];
            for (h, chunk) in table.chunks_mut(tri).enumerate() {
                let i = quad.polar_count() - 1 - h;
                legendre::fill_triangle(cutoff, quad.cos_nodes()[i], quad.sin_nodes()[i], chunk);
            }
            table
        } else {
            Vec::new()
        };
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(quad.azimuth_count());
        let inverse = planner.plan_fft_inverse(quad.azimuth_count());
        Self {
            cutoff,
            quad,
            table,
            forward,
            inverse,
        }
    }

    /// Convenience constructor: quadrature exact to `factor · cutoff`.
    pub fn for_cutoff(cutoff: usize, factor: usize) -> Self {
        let quad = SphereQuadrature::for_cutoff(cutoff, factor.max(2));
        Self::new_unchecked(cutoff, quad)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn quadrature(&self) -> &SphereQuadrature {
        &self.quad
    }

    /// Whether the quadrature integrates products of two band-`cutoff`
    /// fields exactly.
    pub fn is_exact(&self) -> bool {
        self.quad.exact_degree() >= 2 * self.cutoff
    }

    fn with_ring_table<R>(&self, h: usize, scratch: &mut Vec<f64>, f: impl FnOnce(&[f64]) -> R) -> R {
        let tri = packed_len(self.cutoff);
        if !self.table.is_empty() {
            return f(&self.table[h * tri..(h + 1) * tri]);
        }
        scratch.resize(tri, 0.0);
        let i = self.quad.polar_count() - 1 - h;
        legendre::fill_triangle(self.cutoff, self.quad.cos_nodes()[i], self.quad.sin_nodes()[i], scratch);
        f(scratch)
    }

    /// Values of `f` at every quadrature node. Fields with a smaller cutoff
    /// are accepted (they are implicitly zero-padded).
    pub fn synthesize(&self, f: &SpectralField) -> Result<GridField> {
        if f.cutoff() > self.cutoff {
            return Err(Error::CutoffMismatch {
                expected: self.cutoff,
                found: f.cutoff(),
            });
        }
        let nmax = f.cutoff();
        let lp = self.quad.polar_count();
        let la = self.quad.azimuth_count();
        let c = f.coeffs();
        let mut out = GridField::zeros(lp, la);
        let mut up = vec![Complex64::default(); la];
        let mut down = vec![Complex64::default(); la];
        let mut scratch = Vec::new();
        let mut fft_scratch = vec![Complex64::default(); self.inverse.get_inplace_scratch_len()];
        for h in 0..lp.div_ceil(2) {
            let i_up = lp - 1 - h;
            let i_down = h;
            up.fill(Complex64::default());
            down.fill(Complex64::default());
            self.with_ring_table(h, &mut scratch, |tri| {
                for m in 0..=nmax {
                    let col = &tri[packed_offset(self.cutoff, m)..];
                    let mut cos_e = Complex64::default();
                    let mut cos_o = Complex64::default();
                    let mut sin_e = Complex64::default();
                    let mut sin_o = Complex64::default();
                    let mut n = m;
                    while n <= nmax {
                        let q = col[n - m];
                        let base = n * n + n;
                        cos_e += c[base + m] * q;
                        sin_e += c[base - m] * q;
                        n += 2;
                    }
                    n = m + 1;
                    while n <= nmax {
                        let q = col[n - m];
                        let base = n * n + n;
                        cos_o += c[base + m] * q;
                        sin_o += c[base - m] * q;
                        n += 2;
                    }
                    place(&mut up, m, cos_e + cos_o, sin_e + sin_o);
                    place(&mut down, m, cos_e - cos_o, sin_e - sin_o);
                }
            });
            self.inverse.process_with_scratch(&mut up, &mut fft_scratch);
            out.ring_mut(i_up).copy_from_slice(&up);
            if i_down != i_up {
                self.inverse.process_with_scratch(&mut down, &mut fft_scratch);
                out.ring_mut(i_down).copy_from_slice(&down);
            }
        }
        Ok(out)
    }

    /// Quadrature projection of grid values onto degrees `≤ cutoff`.
    pub fn analyze(&self, g: &GridField) -> Result<SpectralField> {
        let lp = self.quad.polar_count();
        let la = self.quad.azimuth_count();
        if g.polar_count != lp || g.azimuth_count != la || g.values.len() != lp * la {
            return Err(Error::GridMismatch {
                expected: lp * la,
                found: g.values.len(),
            });
        }
        let nmax = self.cutoff;
        let mut coeffs = vec![Complex64::default(); (nmax + 1) * (nmax + 1)];
        let mut up = vec![Complex64::default(); la];
        let mut down = vec![Complex64::default(); la];
        let mut scratch = Vec::new();
        let mut fft_scratch = vec![Complex64::default(); self.forward.get_inplace_scratch_len()];
        let inv_la = 1.0 / la as f64;
        for h in 0..lp.div_ceil(2) {
            let i_up = lp - 1 - h;
            let i_down = h;
            let middle = i_up == i_down;
            let w = self.quad.polar_weight(i_up) * inv_la;
            up.copy_from_slice(g.ring(i_up));
            self.forward.process_with_scratch(&mut up, &mut fft_scratch);
            if middle {
                down.fill(Complex64::default());
            } else {
                down.copy_from_slice(g.ring(i_down));
                self.forward.process_with_scratch(&mut down, &mut fft_scratch);
            }
            self.with_ring_table(h, &mut scratch, |tri| {
                for m in 0..=nmax {
                    let col = &tri[packed_offset(nmax, m)..];
                    let (cu, su) = fold(&up, m);
                    let (cd, sd) = fold(&down, m);
                    let scale = if m == 0 { w } else { w * SQRT_2 };
                    // even-parity degrees see up + down, odd see up − down
                    let (cos_e, cos_o) = ((cu + cd) * scale, (cu - cd) * scale);
                    let (sin_e, sin_o) = ((su + sd) * scale, (su - sd) * scale);
                    for n in m..=nmax {
                        let q = col[n - m];
                        let base = n * n + n;
                        let (cv, sv) = if (n - m) % 2 == 0 {
                            (cos_e, sin_e)
                        } else {
                            (cos_o, sin_o)
                        };
                        coeffs[base + m] += cv * q;
                        if m > 0 {
                            coeffs[base - m] += sv * q;
                        }
                    }
                }
            });
        }
        SpectralField::from_coeffs(nmax, coeffs)
    }
}

/// Adds `C cos mφ + D sin mφ` (with the √2 basis scale for `m > 0`) to the
/// Fourier buffer of one ring.
#[inline]
fn place(buf: &mut [Complex64], m: usize, cos_part: Complex64, sin_part: Complex64) {
    let la = buf.len();
    if m == 0 {
        buf[0] += cos_part;
        return;
    }
    let cos_part = cos_part * SQRT_2;
    let sin_part = sin_part * SQRT_2;
    let i_sin = Complex64::new(0.0, 1.0) * sin_part;
    buf[m % la] += (cos_part - i_sin) * 0.5;
    buf[(la - m % la) % la] += (cos_part + i_sin) * 0.5;
}

/// Azimuthal cosine/sine moments `Σ_j g_j cos(mφ_j)`, `Σ_j g_j sin(mφ_j)`
/// from the forward DFT of a ring.
#[inline]
fn fold(spec: &[Complex64], m: usize) -> (Complex64, Complex64) {
    let la = spec.len();
    if m == 0 {
        return (spec[0], Complex64::default());
    }
    let plus = spec[m % la];
    let minus = spec[(la - m % la) % la];
    ((plus + minus) * 0.5, Complex64::new(0.0, 0.5) * (plus - minus))
}

/// One-shot synthesis on `q`.
pub fn synthesize(f: &SpectralField, q: &SphereQuadrature) -> Result<GridField> {
    SpectralTransform::new_unchecked(f.cutoff(), q.clone()).synthesize(f)
}

/// One-shot analysis; fails with [`Error::Aliasing`] when `q` is not exact
/// to degree `2 · cutoff`.
pub fn analyze(g: &GridField, q: &SphereQuadrature, cutoff: usize) -> Result<SpectralField> {
    SpectralTransform::new(cutoff, q.clone())?.analyze(g)
}
