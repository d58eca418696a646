use s2flow::randomization::*;
use s2flow::regression::fit_exponent;
use s2flow::sphere::{eigenvalue, sobolev_norm, SpherePoint};

fn point() -> SpherePoint {
    SpherePoint::new(0.83, 2.1)
}

#[test]
fn draws_are_reproducible_and_nested() {
    let spec = RandomDataSpec::new(1.5, 32, 99).unwrap();
    let a = sample_data_at(&spec, 5);
    assert_eq!(a, sample_data_at(&spec, 5));
    assert_ne!(a, sample_data_at(&spec, 6));
    let coarse = sample_data_at(&RandomDataSpec { cutoff: 8, ..spec }, 5);
    assert_eq!(coarse, a.truncate(8));
}

#[test]
fn mass_matches_closed_form() {
    let spec = RandomDataSpec::new(1.25, 24, 1).unwrap();
    let norms: Vec<f64> = (0..10_000).map(|s| sample_data_at(&spec, s).norm_sq().sqrt()).collect();
    let est = MomentEstimate::from_magnitudes(2.0, &norms).unwrap();
    assert!(est.agrees_with(spec.expected_mass().sqrt(), 3.0), "{est:?}");
}

#[test]
fn critical_sobolev_norm_grows_logarithmically() {
    // E‖P_{≤N}φ‖²_{H^{α−1}} = Σ (2n+1)/λ_n², i.e. ~ 2 ln N
    let alpha = 1.5;
    let exact = |n: usize| -> f64 { (0..=n).map(|k| (2 * k + 1) as f64 / eigenvalue(k).0.powi(2)).sum() };
    for n in [16, 64, 256] {
        assert!((exact(n) - 2.0 * (n as f64).ln()).abs() < 1.0);
    }
    let spec = RandomDataSpec::new(alpha, 64, 3).unwrap();
    let norms: Vec<f64> = (0..2000).map(|s| sobolev_norm(&sample_data_at(&spec, s), alpha - 1.0)).collect();
    let est = MomentEstimate::from_magnitudes(2.0, &norms).unwrap();
    assert!(est.agrees_with(exact(64).sqrt(), 3.0), "{est:?}");
    // subcritical regularity stays bounded
    let sub = |n: usize| -> f64 { (0..=n).map(|k| (2 * k + 1) as f64 * eigenvalue(k).0.powf(-2.4)).sum() };
    assert!(sub(4096) - sub(1024) < 0.5);
}

#[test]
fn shell_moments_are_gaussian() {
    for p in [2.0, 4.0] {
        let est = shell_moment_check(20, point(), p, 10_000, 4).unwrap();
        assert!(est.agrees_with(complex_gaussian_norm(p), 3.0), "p = {p}: {est:?}");
    }
    for p in [2.0, 4.0, 8.0, 16.0] {
        let est = shell_moment_check(12, point(), p, 10_000, 5).unwrap();
        assert!(est.estimate / p.sqrt() < 1.0, "p = {p}: {est:?}");
    }
}

#[test]
fn projected_moments_scale_with_alpha() {
    let shells = [16, 32, 64, 128, 256];
    let alphas = [1.25, 1.5, 2.0];
    let table = projected_moment_table(&alphas, &shells, 2.0, point(), 0.3, 4000, 8).unwrap();
    for &alpha in &alphas {
        let rows: Vec<_> = table.iter().filter(|r| r.alpha == alpha).collect();
        for r in &rows {
            assert!(r.moment.agrees_with(r.exact_l2, 3.0), "{r:?}");
        }
        let series: Vec<(f64, f64)> = rows.iter().map(|r| (r.shell as f64, r.moment.estimate)).collect();
        let fit = fit_exponent(&series).unwrap();
        assert!((fit.slope + (alpha - 1.0)).abs() < 0.05, "α = {alpha}: {fit:?}");
    }
}

#[test]
fn projected_moment_is_time_independent() {
    let spec = RandomDataSpec::new(1.5, 64, 12).unwrap();
    let exact = projected_second_moment(1.5, 64).sqrt();
    for t in [0.0, 0.37, 5.0] {
        let est = projected_moment_check(&spec, 64, 2.0, point(), t, 5000).unwrap();
        assert!(est.agrees_with(exact, 3.0), "t = {t}: {est:?}");
    }
}

#[test]
fn khinchine_and_tails() {
    let c: Vec<f64> = (1..=40).map(|n| 1.0 / n as f64).collect();
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    for p in [2.0, 4.0, 6.0] {
        let est = khinchine_check(&c, p, 10_000, 2).unwrap();
        assert!(est.agrees_with(norm * complex_gaussian_norm(p), 3.0), "{est:?}");
        assert!(est.estimate <= p.sqrt() * norm);
    }
    let lambdas: Vec<f64> = (1..=8).map(|k| 0.25 * k as f64 * norm).collect();
    let tail = tail_check(&c, &lambdas, 50_000, 3).unwrap();
    assert!((tail.fit.slope + 1.0).abs() < 0.1, "{:?}", tail.fit);
    assert!(tail.fit.r_squared > 0.99);
}

#[test]
fn chaos_hypercontractivity() {
    for order in [2, 3] {
        let coeffs = ChaosCoefficients::random_diagonal_free(order, 12, 30, 6).unwrap();
        for p in [3.0, 4.0, 6.0] {
            let r = wiener_chaos_check(&coeffs, p, 10_000, 7).unwrap();
            assert!(r.within_bound(), "{r:?}");
            assert!(r.ratio >= 1.0);
        }
    }
}

#[test]
fn linear_flow_converges_on_shrinking_windows() {
    let spec = RandomDataSpec::new(1.5, 256, 21).unwrap();
    let report =
        linear_convergence_experiment(&spec, &[1e-1, 1e-2, 1e-3, 1e-4], &LinearExperimentConfig::default())
            .unwrap();
    for w in report.rows.windows(2) {
        assert!(w[1].median < w[0].median, "{:?}", report.rows);
    }
    // shell sups decay like N^{−(α−1)} up to the (ln N)^{1/2} of a maximum
    assert!(report.normalized_shell_fit.slope <= -0.45, "{:?}", report.normalized_shell_fit);
    assert!(report.shell_fit.slope < 0.0);
}
