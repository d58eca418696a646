//! Real spherical harmonics on the unit sphere with unit-mass surface
//! measure, product quadrature, spectral transforms, norms and the linear
//! Schrödinger propagator.

mod basis;
mod field;
mod flow;
mod grid;
pub mod legendre;
mod norms;
mod sogge;
mod transform;

pub use basis::{basis_values, eval_basis, weyl_sum};
pub use field::{GridField, ModeIndex, SpectralField, SpherePoint};
pub use flow::{linear_flow, PhaseConvention};
pub use grid::SphereQuadrature;
pub use norms::{
    highest_weight_field, highest_weight_norm_sq, lp_norm, sobolev_norm, sup_norm_oversampled,
};
pub use sogge::{sogge_sharpness, SoggeRatios};
pub use transform::{analyze, synthesize, SpectralTransform};

/// Largest degree accepted by basis evaluation.
pub const MAX_DEGREE: usize = 4096;

/// `λ_n = √(n² + n + 1)`, the spectrum of `√(1 − Δ)`, together with the
/// Laplace eigenvalue `n(n + 1)`.
pub fn eigenvalue(n: usize) -> (f64, f64) {
    let laplace = (n * (n + 1)) as f64;
    ((laplace + 1.0).sqrt(), laplace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues() {
        assert_eq!(eigenvalue(0), (1.0, 0.0));
        let (l1, e1) = eigenvalue(1);
        assert!((l1 - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(e1, 2.0);
        let (l10, e10) = eigenvalue(10);
        assert!((l10 - 111f64.sqrt()).abs() < 1e-14);
        assert_eq!(e10, 110.0);
    }
}
