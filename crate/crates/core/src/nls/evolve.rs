use num_complex::Complex64;

use super::{CubicOperator, Nonlinearity};
use crate::error::{invalid, Error, Result};
use crate::sphere::{eigenvalue, SpectralField};

/// Abort when `‖u‖_{L²}` exceeds this multiple of its initial value.
pub const GROWTH_LIMIT: f64 = 10.0;

/// Coefficients of `u_N` at time `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedState {
    pub field: SpectralField,
    pub time: f64,
}

impl TruncatedState {
    pub fn initial(field: SpectralField) -> Self {
        Self { field, time: 0.0 }
    }

    pub fn mass(&self) -> f64 {
        self.field.norm_sq()
    }
}

/// Which truncated equation is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    /// `i∂ₜu + (Δ − 1)u = P_{≤N}[(|u|² − 2‖u‖²)u]`.
    Wick,
    /// `i∂ₜu + Δu = P_{≤N}[|u|²u]`.
    Cubic,
}

impl Equation {
    /// Linear frequency `ω_n` in `ċ_n = −iω_n c_n − i N̂_n`.
    pub fn frequency(self, n: usize) -> f64 {
        let (lambda, laplace) = eigenvalue(n);
        match self {
            Equation::Wick => lambda * lambda,
            Equation::Cubic => laplace,
        }
    }

    pub fn nonlinearity(self) -> Nonlinearity {
        match self {
            Equation::Wick => Nonlinearity::Wick,
            Equation::Cubic => Nonlinearity::Cubic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    /// Largest step; the actual step divides each interval evenly.
    pub dt: f64,
    /// Grid exactness in units of `2N` (at least 2).
    pub dealias: usize,
    /// Signed final time.
    pub final_time: f64,
    pub equation: Equation,
    /// Record every this many steps (0: only the endpoints).
    pub snapshot_every: usize,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            dealias: 2,
            final_time: 1.0,
            equation: Equation::Wick,
            snapshot_every: 0,
        }
    }
}

/// Integrating-factor (Lawson) RK4: the linear phases `e^{−iω_n h}` are
/// applied exactly and RK4 acts only on the nonlinearity.
#[derive(Debug, Clone)]
pub struct Propagator {
    op: CubicOperator,
    equation: Equation,
    frequencies: Vec<f64>,
}

impl Propagator {
    pub fn new(cutoff: usize, dealias: usize, equation: Equation) -> Result<Self> {
        Ok(Self {
            op: CubicOperator::new(cutoff, dealias)?,
            equation,
            frequencies: (0..=cutoff).map(|n| equation.frequency(n)).collect(),
        })
    }

    pub fn cutoff(&self) -> usize {
        self.op.cutoff()
    }

    pub fn operator(&self) -> &CubicOperator {
        &self.op
    }

    fn phase(&self, f: &SpectralField, h: f64) -> SpectralField {
        let mut out = f.clone();
        for (n, &w) in self.frequencies.iter().enumerate() {
            let e = Complex64::from_polar(1.0, -w * h);
            out.shell_mut(n).iter_mut().for_each(|c| *c *= e);
        }
        out
    }

    /// `−i N̂(u)`.
    fn rhs(&self, u: &SpectralField) -> Result<SpectralField> {
        let mut k = self.op.apply(u, self.equation.nonlinearity())?;
        k.scale(Complex64::new(0.0, -1.0));
        Ok(k)
    }

    /// One step of size `h` (may be negative).
    pub fn step(&self, c: &SpectralField, h: f64) -> Result<SpectralField> {
        let one = Complex64::new(1.0, 0.0);
        let half = 0.5 * h;
        let k1 = self.rhs(c)?;
        let e_half_c = self.phase(c, half);
        let mut c2 = c.clone();
        c2.axpy(one * half, &k1)?;
        let k2 = self.rhs(&self.phase(&c2, half))?;
        let mut c3 = e_half_c.clone();
        c3.axpy(one * half, &k2)?;
        let k3 = self.rhs(&c3)?;
        let mut c4 = self.phase(c, h);
        c4.axpy(one * h, &self.phase(&k3, half))?;
        let k4 = self.rhs(&c4)?;

        let mut mid = k2;
        mid.axpy(one, &k3)?;
        let mut out = self.phase(c, h);
        out.axpy(one * (h / 6.0), &self.phase(&k1, h))?;
        out.axpy(one * (h / 3.0), &self.phase(&mid, half))?;
        out.axpy(one * (h / 6.0), &k4)?;
        Ok(out)
    }

    /// Steps from `state` to time `to` in equal steps no longer than
    /// `max_dt`, checking for blow-up against `reference_norm`.
    pub fn advance(
        &self,
        state: &TruncatedState,
        to: f64,
        max_dt: f64,
        reference_norm: f64,
    ) -> Result<TruncatedState> {
        let span = to - state.time;
        let steps = (span.abs() / max_dt).ceil() as usize;
        if steps == 0 {
            return Ok(state.clone());
        }
        let h = span / steps as f64;
        let mut c = state.field.clone();
        for i in 0..steps {
            c = self.step(&c, h)?;
            check_growth(&c, state.time + (i + 1) as f64 * h, reference_norm)?;
        }
        Ok(TruncatedState { field: c, time: to })
    }
}

fn check_growth(c: &SpectralField, time: f64, reference: f64) -> Result<()> {
    let current = c.norm_sq().sqrt();
    if !c.is_finite() || current > GROWTH_LIMIT * reference.max(f64::MIN_POSITIVE) {
        return Err(Error::Unstable {
            time,
            initial: reference,
            current,
        });
    }
    Ok(())
}

/// A recorded trajectory; the first state is the initial datum and the last
/// is at `final_time`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<TruncatedState>,
}

impl Trajectory {
    pub fn last(&self) -> &TruncatedState {
        self.states.last().expect("trajectory is never empty")
    }
}

fn validate(cfg: &EvolutionConfig) -> Result<()> {
    if !(cfg.dt > 0.0) || !cfg.final_time.is_finite() {
        return invalid(format!(
            "need dt > 0 and a finite final time, got dt = {}, T = {}",
            cfg.dt, cfg.final_time
        ));
    }
    Ok(())
}

/// Integrates the truncated equation from `u0` to `u0.time + final_time`.
pub fn evolve(u0: &TruncatedState, cfg: &EvolutionConfig) -> Result<Trajectory> {
    validate(cfg)?;
    let prop = Propagator::new(u0.field.cutoff(), cfg.dealias, cfg.equation)?;
    let reference = u0.field.norm_sq().sqrt();
    let steps = (cfg.final_time.abs() / cfg.dt).ceil() as usize;
    let h = if steps == 0 { 0.0 } else { cfg.final_time / steps as f64 };
    let mut states = vec![u0.clone()];
    let mut c = u0.field.clone();
    for i in 1..=steps {
        c = prop.step(&c, h)?;
        let time = u0.time + i as f64 * h;
        check_growth(&c, time, reference)?;
        let record = i == steps || (cfg.snapshot_every > 0 && i % cfg.snapshot_every == 0);
        if record {
            states.push(TruncatedState {
                field: c.clone(),
                time,
            });
        }
    }
    Ok(Trajectory { states })
}

/// States at each of `times` (same sign, increasing in magnitude),
/// integrating once through all of them.
pub fn evolve_through(
    u0: &TruncatedState,
    times: &[f64],
    cfg: &EvolutionConfig,
) -> Result<Vec<TruncatedState>> {
    validate(cfg)?;
    let prop = Propagator::new(u0.field.cutoff(), cfg.dealias, cfg.equation)?;
    let reference = u0.field.norm_sq().sqrt();
    let mut out = Vec::with_capacity(times.len());
    let mut state = u0.clone();
    for &t in times {
        if (t - u0.time).abs() < (state.time - u0.time).abs()
            || (t - u0.time) * (state.time - u0.time) < 0.0
        {
            return invalid("times must move monotonically away from the initial time");
        }
        state = prop.advance(&state, t, cfg.dt, reference)?;
        out.push(state.clone());
    }
    Ok(out)
}

/// `u ↦ u · e^{i(2m − 1)t}` with `m = ‖u(0)‖²_{L²}`: maps solutions of
/// the truncated cubic equation to solutions of the truncated Wick equation.
pub fn gauge_transform(trajectory: &Trajectory, mass: f64) -> Trajectory {
    let states = trajectory
        .states
        .iter()
        .map(|s| {
            let mut field = s.field.clone();
            field.scale(Complex64::from_polar(1.0, (2.0 * mass - 1.0) * s.time));
            TruncatedState {
                field,
                time: s.time,
            }
        })
        .collect();
    Trajectory { states }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randomization::{sample_data_at, RandomDataSpec};
    use crate::sphere::{highest_weight_field, highest_weight_norm_sq};

    fn random_state(alpha: f64, cutoff: usize, seed: u64) -> TruncatedState {
        TruncatedState::initial(sample_data_at(&RandomDataSpec::new(alpha, cutoff, seed).unwrap(), 0))
    }

    fn cfg(dt: f64, t: f64, equation: Equation) -> EvolutionConfig {
        EvolutionConfig {
            dt,
            final_time: t,
            equation,
            ..Default::default()
        }
    }

    #[test]
    fn zero_data_stays_zero() {
        let u0 = TruncatedState::initial(SpectralField::zeros(6));
        let tr = evolve(&u0, &cfg(0.01, 0.3, Equation::Wick)).unwrap();
        assert_eq!(tr.last().field.norm_sq(), 0.0);
        assert!((tr.last().time - 0.3).abs() < 1e-15);
    }

    #[test]
    fn highest_weight_rotates_in_closed_form() {
        // P_{≤n}(|Y|²Y) = κ‖Y‖²·Y for Y = (x₁+ix₂)^n at cutoff n, since no
        // lower shell carries azimuthal order n; κ = ‖Y‖⁴_{L⁴}/‖Y‖⁴_{L²}.
        let n = 6;
        let mut y = highest_weight_field(n);
        y.scale(Complex64::new(highest_weight_norm_sq(n).sqrt().recip(), 0.0));
        let kappa = highest_weight_norm_sq(2 * n) / highest_weight_norm_sq(n).powi(2);
        let a = Complex64::new(0.9, 0.4);
        let mut u0 = y.clone();
        u0.scale(a);
        let t = 0.7;
        let tr = evolve(&TruncatedState::initial(u0), &cfg(1e-3, t, Equation::Wick)).unwrap();
        let omega = Equation::Wick.frequency(n) + (kappa - 2.0) * a.norm_sqr();
        let mut expected = y;
        expected.scale(a * Complex64::from_polar(1.0, -omega * t));
        assert!(tr.last().field.max_abs_diff(&expected).unwrap() < 1e-8);
    }

    #[test]
    fn mass_is_conserved() {
        let u0 = random_state(2.5, 32, 0);
        let tr = evolve(&u0, &cfg(1e-3, 1.0, Equation::Wick)).unwrap();
        let drift = (tr.last().mass() - u0.mass()).abs();
        assert!(drift < 1e-8, "drift {drift:e}");
    }

    #[test]
    fn fourth_order_under_step_halving() {
        let u0 = random_state(2.5, 16, 1);
        let run = |dt| evolve(&u0, &cfg(dt, 0.25, Equation::Wick)).unwrap().last().field.clone();
        let (a, b, c) = (run(2e-3), run(1e-3), run(5e-4));
        let order = (a.sub(&b).unwrap().norm_sq() / b.sub(&c).unwrap().norm_sq()).sqrt().log2();
        assert!((3.7..=4.3).contains(&order), "order {order}");
    }

    #[test]
    fn backward_evolution_inverts_forward() {
        let u0 = random_state(2.0, 12, 2);
        let fwd = evolve(&u0, &cfg(1e-3, 0.2, Equation::Wick)).unwrap();
        let back = evolve(fwd.last(), &cfg(1e-3, -0.2, Equation::Wick)).unwrap();
        assert!(back.last().time.abs() < 1e-14);
        assert!(back.last().field.max_abs_diff(&u0.field).unwrap() < 1e-9);
    }

    #[test]
    fn gauge_maps_cubic_to_wick() {
        let u0 = random_state(1.5, 16, 3);
        let mut c = cfg(1e-3, 0.5, Equation::Cubic);
        c.snapshot_every = 100;
        let cubic = evolve(&u0, &c).unwrap();
        c.equation = Equation::Wick;
        let wick = evolve(&u0, &c).unwrap();
        let gauged = gauge_transform(&cubic, u0.mass());
        assert_eq!(gauged.states.len(), 6);
        for (g, w) in gauged.states.iter().zip(&wick.states) {
            assert!(g.field.max_abs_diff(&w.field).unwrap() < 1e-6);
        }
        // t = 0 is the identity and the factor is unimodular
        assert_eq!(gauged.states[0].field, u0.field);
        assert!((gauged.last().mass() - cubic.last().mass()).abs() < 1e-13);
    }

    #[test]
    fn evolve_through_matches_direct() {
        let u0 = random_state(2.0, 8, 4);
        let times = [0.01, 0.05, 0.05, 0.12];
        let states = evolve_through(&u0, &times, &cfg(1e-3, 0.0, Equation::Wick)).unwrap();
        let direct = evolve(&u0, &cfg(1e-3, 0.12, Equation::Wick)).unwrap();
        assert!(states[3].field.max_abs_diff(&direct.last().field).unwrap() < 1e-12);
        assert!(evolve_through(&u0, &[0.1, 0.05], &cfg(1e-3, 0.0, Equation::Wick)).is_err());
        assert!(evolve_through(&u0, &[0.1, -0.2], &cfg(1e-3, 0.0, Equation::Wick)).is_err());
    }

    #[test]
    fn oversized_step_is_reported() {
        let mut u0 = random_state(1.5, 16, 5);
        u0.field.scale(Complex64::new(6.0, 0.0));
        let err = evolve(&u0, &cfg(0.2, 2.0, Equation::Cubic)).unwrap_err();
        assert!(matches!(err, Error::Unstable { .. }), "{err}");
    }

    #[test]
    fn invalid_config_rejected() {
        let u0 = random_state(2.0, 4, 0);
        assert!(evolve(&u0, &cfg(0.0, 1.0, Equation::Wick)).is_err());
        assert!(evolve(&u0, &cfg(1e-3, f64::NAN, Equation::Wick)).is_err());
    }
}
