use std::f64::consts::TAU;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::sphere::ModeIndex;

/// 32-bit words consumed per complex Gaussian (two `u64` uniforms).
const WORDS_PER_DRAW: u128 = 4;

/// Standard complex Gaussians (`E g = 0`, `E|g|² = 1`, `E g² = 0`) addressed
/// by `(seed, sample, position)`.
///
/// The ChaCha key is the seed, the stream is the sample index and the
/// position selects the word offset, so any draw can be regenerated in
/// isolation and samples can be produced in any order.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    rng: ChaCha8Rng,
}

impl GaussianStream {
    pub fn new(seed: u64, sample: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(sample);
        Self { rng }
    }

    /// Positions the stream so that the next draw is draw number `position`.
    pub fn seek(&mut self, position: u64) {
        self.rng.set_word_pos(WORDS_PER_DRAW * position as u128);
    }

    /// Positions the stream at the draw belonging to mode `(n, k)`.
    pub fn seek_mode(&mut self, idx: ModeIndex) {
        self.seek(idx.flat() as u64);
    }

    /// Uniform on `(0, 1]`: never zero, so logarithms stay finite.
    pub fn next_uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Box–Muller in polar form: `|g|² ~ Exp(1)`, uniform phase.
    pub fn next_gaussian(&mut self) -> Complex64 {
        let radius = (-self.next_uniform().ln()).sqrt();
        let angle = TAU * self.next_uniform();
        Complex64::from_polar(radius, angle)
    }

    pub fn fill(&mut self, out: &mut [Complex64]) {
        out.iter_mut().for_each(|g| *g = self.next_gaussian());
    }
}

/// The Gaussian attached to mode `idx` of sample `sample`.
pub fn mode_gaussian(seed: u64, sample: u64, idx: ModeIndex) -> Complex64 {
    let mut s = GaussianStream::new(seed, sample);
    s.seek_mode(idx);
    s.next_gaussian()
}
