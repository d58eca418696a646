use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::sphere::{GridField, SpectralField, SpectralTransform, SphereQuadrature};

/// Largest cutoff accepted by [`resonance_split`].
pub const MAX_RESONANCE_CUTOFF: usize = 64;

/// Which cubic term drives the flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nonlinearity {
    /// `(|u|² − 2‖u‖²_{L²}) u`.
    Wick,
    /// `|u|² u`.
    Cubic,
}

/// Pseudo-spectral evaluation of cubic nonlinearities at a fixed cutoff on
/// a grid exact to degree `4N`, so that `P_{≤N}` of a cubic product is
/// computed without aliasing.
#[derive(Debug, Clone)]
pub struct CubicOperator {
    transform: SpectralTransform,
}

impl CubicOperator {
    /// `dealias` is the exactness in units of `2N`; it must be at least 2.
    pub fn new(cutoff: usize, dealias: usize) -> Result<Self> {
        if dealias < 2 {
            return invalid(format!("dealias factor {dealias} must be at least 2"));
        }
        Ok(Self {
            transform: SpectralTransform::for_cutoff(cutoff, 2 * dealias),
        })
    }

    pub fn with_quadrature(cutoff: usize, q: &SphereQuadrature) -> Result<Self> {
        let required = 4 * cutoff;
        if q.exact_degree() < required {
            return Err(Error::Aliasing {
                exact_degree: q.exact_degree(),
                required,
            });
        }
        Ok(Self {
            transform: SpectralTransform::new(cutoff, q.clone())?,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.transform.cutoff()
    }

    pub fn transform(&self) -> &SpectralTransform {
        &self.transform
    }

    pub fn synthesize(&self, u: &SpectralField) -> Result<GridField> {
        self.transform.synthesize(u)
    }

    pub fn analyze(&self, g: &GridField) -> Result<SpectralField> {
        self.transform.analyze(g)
    }

    /// `P_{≤N}[(|u|² − shift) u]`.
    fn shifted_cubic(&self, u: &SpectralField, shift: f64) -> Result<SpectralField> {
        if u.cutoff() != self.cutoff() {
            return Err(Error::CutoffMismatch {
                expected: self.cutoff(),
                found: u.cutoff(),
            });
        }
        let mut g = self.synthesize(u)?;
        g.values
            .iter_mut()
            .for_each(|v| *v *= v.norm_sqr() - shift);
        self.analyze(&g)
    }

    pub fn apply(&self, u: &SpectralField, kind: Nonlinearity) -> Result<SpectralField> {
        match kind {
            Nonlinearity::Wick => self.shifted_cubic(u, 2.0 * u.norm_sq()),
            Nonlinearity::Cubic => self.shifted_cubic(u, 0.0),
        }
    }
}

/// `P_{≤N}[(|u|² − 2‖u‖²_{L²}) u]`; `q` must be exact to degree `4N`.
pub fn wick_nonlinearity(u: &SpectralField, q: &SphereQuadrature) -> Result<SpectralField> {
    CubicOperator::with_quadrature(u.cutoff(), q)?.apply(u, Nonlinearity::Wick)
}

/// Decomposition of the Wick nonlinearity by coincidences among the shell
/// indices of `u_{n₁} ū_{n₂} u_{n₃}`, `u_n = π_n u`:
///
/// * `n1`: `n₁ ≠ n₂ ≠ n₃`, i.e. `Σ_{n₂} ū_{n₂} (u − u_{n₂})²`;
/// * `n2`: `2 Σ_{n₁≠n₂} (|u_{n₂}|² − ‖u_{n₂}‖²) u_{n₁}`;
/// * `n3`: `Σ_n (|u_n|² − 2‖u_n‖²) u_n`, the fully diagonal part carrying
///   the remaining Wick counterterm, so that `n1 + n2 + n3` is the whole
///   nonlinearity.
///
/// Each part is projected to the cutoff of `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceSplit {
    pub n1: SpectralField,
    pub n2: SpectralField,
    pub n3: SpectralField,
}

impl ResonanceSplit {
    pub fn total(&self) -> Result<SpectralField> {
        let mut t = self.n1.clone();
        t.axpy(Complex64::new(1.0, 0.0), &self.n2)?;
        t.axpy(Complex64::new(1.0, 0.0), &self.n3)?;
        Ok(t)
    }
}

pub fn resonance_split(u: &SpectralField) -> Result<ResonanceSplit> {
    let cutoff = u.cutoff();
    if cutoff > MAX_RESONANCE_CUTOFF {
        return invalid(format!(
            "resonance split supports cutoffs up to {MAX_RESONANCE_CUTOFF}, got {cutoff}"
        ));
    }
    let op = CubicOperator::new(cutoff, 2)?;
    let shells: Vec<GridField> = (0..=cutoff)
        .map(|n| op.synthesize(&u.filter_shells(|m| m == n)))
        .collect::<Result<_>>()?;
    let masses: Vec<f64> = (0..=cutoff).map(|n| u.shell_norm_sq(n)).collect();
    let total = op.synthesize(u)?;
    let len = total.values.len();
    let zero = Complex64::new(0.0, 0.0);
    let (mut g1, mut g2, mut g3) = (total.clone(), total.clone(), total.clone());
    let mut a_sum = vec![0.0; len];
    let mut a_weighted = vec![zero; len];
    let mut n1 = vec![zero; len];
    let mut n3 = vec![zero; len];
    for (g, &m) in shells.iter().zip(&masses) {
        for i in 0..len {
            let (un, u_all) = (g.values[i], total.values[i]);
            let rest = u_all - un;
            n1[i] += un.conj() * rest * rest;
            let a = un.norm_sqr() - m;
            a_sum[i] += a;
            a_weighted[i] += a * un;
            n3[i] += (un.norm_sqr() - 2.0 * m) * un;
        }
    }
    for i in 0..len {
        g1.values[i] = n1[i];
        g2.values[i] = 2.0 * (a_sum[i] * total.values[i] - a_weighted[i]);
        g3.values[i] = n3[i];
    }
    Ok(ResonanceSplit {
        n1: op.analyze(&g1)?,
        n2: op.analyze(&g2)?,
        n3: op.analyze(&g3)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randomization::{sample_data_at, RandomDataSpec};
    use crate::sphere::ModeIndex;

    fn random_field(cutoff: usize, seed: u64) -> SpectralField {
        sample_data_at(&RandomDataSpec::new(1.5, cutoff, seed).unwrap(), 0)
    }

    #[test]
    fn constant_field() {
        let c = Complex64::new(0.6, -0.8);
        let mut u = SpectralField::zeros(3);
        u.set(0, 0, c);
        let w = CubicOperator::new(3, 2).unwrap().apply(&u, Nonlinearity::Wick).unwrap();
        let mut expected = u.clone();
        expected.scale(Complex64::new(-c.norm_sqr(), 0.0));
        assert!(w.max_abs_diff(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn zonal_degree_one_closed_form() {
        // b_{1,0} = √3 cos θ: ⟨3√3 cos³θ, √3 cos θ⟩ = 9/5, minus 2‖u‖² = 2.
        let u = SpectralField::mode(1, ModeIndex { n: 1, k: 0 });
        let w = CubicOperator::new(1, 2).unwrap().apply(&u, Nonlinearity::Wick).unwrap();
        let mut expected = SpectralField::zeros(1);
        expected.set(1, 0, Complex64::new(-0.2, 0.0));
        assert!(w.max_abs_diff(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn generator_is_mass_conserving() {
        for seed in 0..4 {
            let u = random_field(12, seed);
            let op = CubicOperator::new(12, 2).unwrap();
            for kind in [Nonlinearity::Wick, Nonlinearity::Cubic] {
                let ip = op.apply(&u, kind).unwrap().inner(&u).unwrap();
                assert!(ip.im.abs() < 1e-12, "{kind:?}: {ip}");
            }
        }
    }

    #[test]
    fn insufficient_quadrature_is_flagged() {
        let u = random_field(8, 0);
        let q = SphereQuadrature::with_exact_degree(24);
        assert!(matches!(wick_nonlinearity(&u, &q), Err(Error::Aliasing { required: 32, .. })));
        assert!(wick_nonlinearity(&u, &SphereQuadrature::with_exact_degree(32)).is_ok());
        assert!(CubicOperator::new(8, 1).is_err());
    }

    #[test]
    fn single_shell_is_fully_diagonal() {
        let u = random_field(10, 5).filter_shells(|n| n == 7);
        let split = resonance_split(&u).unwrap();
        assert!(split.n1.norm_sq().sqrt() < 1e-13);
        assert!(split.n2.norm_sq().sqrt() < 1e-13);
        let w = CubicOperator::new(10, 2).unwrap().apply(&u, Nonlinearity::Wick).unwrap();
        assert!(split.n3.max_abs_diff(&w).unwrap() < 1e-12);
    }

    #[test]
    fn two_shells_match_direct_pair_formula() {
        let (a, b) = (3, 6);
        let u = random_field(8, 9).filter_shells(|n| n == a || n == b);
        let split = resonance_split(&u).unwrap();
        let op = CubicOperator::new(8, 2).unwrap();
        let ga = op.synthesize(&u.filter_shells(|n| n == a)).unwrap();
        let gb = op.synthesize(&u.filter_shells(|n| n == b)).unwrap();
        let (ma, mb) = (u.shell_norm_sq(a), u.shell_norm_sq(b));
        let mut g = ga.clone();
        for i in 0..g.values.len() {
            let (x, y) = (ga.values[i], gb.values[i]);
            g.values[i] = 2.0 * ((y.norm_sqr() - mb) * x + (x.norm_sqr() - ma) * y);
        }
        let direct = op.analyze(&g).unwrap();
        assert!(split.n2.max_abs_diff(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn split_sums_to_wick() {
        for (cutoff, seed) in [(16, 1), (24, 2), (32, 3)] {
            let u = random_field(cutoff, seed);
            let split = resonance_split(&u).unwrap();
            let w = CubicOperator::new(cutoff, 2).unwrap().apply(&u, Nonlinearity::Wick).unwrap();
            assert!(split.total().unwrap().max_abs_diff(&w).unwrap() < 1e-10);
        }
    }

    #[test]
    fn split_rejects_large_cutoff() {
        assert!(resonance_split(&SpectralField::zeros(MAX_RESONANCE_CUTOFF + 1)).is_err());
    }
}
