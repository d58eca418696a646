use s2flow::randomization::{
    complex_gaussian_norm, khinchine_check, linear_convergence_experiment, projected_moment_table,
    tail_check, wiener_chaos_check, ChaosCoefficients, LinearExperimentConfig, RandomDataSpec,
};
use s2flow::regression::fit_exponent;
use s2flow::sphere::SpherePoint;

use super::{log_plot, max_step_ratio, param, usage, Context, Experiment};
use crate::report::{num, Report, Rule};
use crate::CliError;

const EXPONENT_TOL: f64 = 0.05;
const CI_MULTIPLE: f64 = 3.0;
const KHINCHINE_CONSTANT: f64 = 1.0;
const TAIL_SLOPE_TOL: f64 = 0.1;
const TAIL_R_SQUARED: f64 = 0.99;

pub const RANDOM_MOMENTS: Experiment = Experiment {
    name: "random-moments",
    about: "Monte-Carlo L²_ω norms of P_N e^{it(Δ−1)}φ_α^ω(x): N-exponents and closed forms",
    params: &[
        param("alpha", "1.25,1.5,2", "decay exponents α"),
        param("shells", "16..256", "dyadic shells N"),
        param("samples", "10000", "Monte-Carlo draws"),
        param("t", "0.3", "evaluation time"),
        param("polar", "0.83", "polar angle of the evaluation point"),
        param("azimuth", "2.1", "azimuth of the evaluation point"),
    ],
    run: random_moments,
};

fn random_moments(ctx: &Context) -> Result<Report, CliError> {
    let alphas = ctx.params.f64_list("alpha")?;
    let shells = ctx.params.usize_list("shells")?;
    let samples = ctx.params.usize("samples")?;
    let t = ctx.params.f64("t")?;
    let x = SpherePoint::new(ctx.params.f64("polar")?, ctx.params.f64("azimuth")?);
    let table = projected_moment_table(&alphas, &shells, 2.0, x, t, samples, ctx.seed)?;

    let mut report = ctx.report(&["alpha", "N", "estimate", "half_width", "exact", "deviation_in_half_widths"]);
    let mut worst_dev: f64 = 0.0;
    let mut series = Vec::new();
    for &alpha in &alphas {
        let rows: Vec<_> = table.iter().filter(|r| r.alpha == alpha).collect();
        for r in &rows {
            let dev = (r.moment.estimate - r.exact_l2).abs() / r.moment.half_width;
            worst_dev = worst_dev.max(dev);
            report.row(vec![
                num(alpha),
                r.shell.to_string(),
                num(r.moment.estimate),
                num(r.moment.half_width),
                num(r.exact_l2),
                num(dev),
            ]);
        }
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.shell as f64, r.moment.estimate)).collect();
        let fit = fit_exponent(&points)?;
        report.check(
            format!("alpha={alpha} exponent"),
            fit.slope,
            Rule::Within { target: -(alpha - 1.0), tol: EXPONENT_TOL },
        );
        series.push((format!("α={alpha}"), points));
    }
    report.check("max deviation from closed form (half-widths)", worst_dev, Rule::AtMost(CI_MULTIPLE));
    report.plots.push(log_plot("Projected second moments", "N", "L²_ω norm", series));
    Ok(report)
}

pub const CHAOS: Experiment = Experiment {
    name: "chaos",
    about: "Khinchine and Wiener-chaos moment bounds, and Gaussian tails",
    params: &[
        param("p", "2,4,6,8", "moment orders"),
        param("orders", "2,3", "chaos degrees k"),
        param("terms", "40", "length of the linear coefficient sequence c_n = 1/n"),
        param("chaos_dim", "12", "Gaussians entering each chaos"),
        param("chaos_terms", "30", "monomials per chaos"),
        param("samples", "10000", "draws for moments"),
        param("tail_samples", "50000", "draws for the tail curve"),
    ],
    run: chaos,
};

fn chaos(ctx: &Context) -> Result<Report, CliError> {
    let ps = ctx.params.f64_list("p")?;
    let orders = ctx.params.usize_list("orders")?;
    let terms = ctx.params.usize("terms")?;
    let dim = ctx.params.usize("chaos_dim")?;
    let chaos_terms = ctx.params.usize("chaos_terms")?;
    let samples = ctx.params.usize("samples")?;
    let tail_samples = ctx.params.usize("tail_samples")?;
    if terms == 0 {
        return Err(usage("terms must be positive"));
    }
    let c: Vec<f64> = (1..=terms).map(|n| 1.0 / n as f64).collect();
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();

    let mut report = ctx.report(&["kind", "k", "p_or_lambda", "value", "reference", "bound"]);
    let mut worst_khinchine = f64::NEG_INFINITY;
    for (i, &p) in ps.iter().enumerate() {
        let est = khinchine_check(&c, p, samples, ctx.seed.wrapping_add(i as u64))?;
        let ratio = est.estimate / norm;
        worst_khinchine = worst_khinchine.max(ratio / p.sqrt());
        report.row(vec![
            "khinchine".into(),
            "1".into(),
            num(p),
            num(ratio),
            num(complex_gaussian_norm(p)),
            num(KHINCHINE_CONSTANT * p.sqrt()),
        ]);
    }
    report.check("max Khinchine ratio / √p", worst_khinchine, Rule::AtMost(KHINCHINE_CONSTANT));

    let mut worst_chaos = f64::NEG_INFINITY;
    for &k in &orders {
        let coeffs = ChaosCoefficients::random_diagonal_free(k, dim, chaos_terms, ctx.seed)?;
        for &p in &ps {
            let r = wiener_chaos_check(&coeffs, p, samples, ctx.seed.wrapping_add(k as u64))?;
            // the CI lower end must respect the bound
            worst_chaos = worst_chaos.max((r.ratio - r.ratio_half_width) / r.bound);
            report.row(vec![
                "chaos".into(),
                k.to_string(),
                num(p),
                num(r.ratio),
                num(r.ratio_half_width),
                num(r.bound),
            ]);
        }
    }
    report.check("max chaos ratio / (p-1)^(k/2)", worst_chaos, Rule::AtMost(1.0));

    let lambdas: Vec<f64> = (1..=8).map(|k| 0.25 * k as f64 * norm).collect();
    let tail = tail_check(&c, &lambdas, tail_samples, ctx.seed)?;
    for &(l, prob) in &tail.points {
        report.row(vec![
            "tail".into(),
            "1".into(),
            num(l / norm),
            num(prob),
            num((-(l / norm).powi(2)).exp()),
            String::new(),
        ]);
    }
    report.check(
        "tail log-slope in λ²",
        tail.fit.slope,
        Rule::Within { target: -1.0, tol: TAIL_SLOPE_TOL },
    );
    report.check("tail log-linearity R²", tail.fit.r_squared, Rule::AtLeast(TAIL_R_SQUARED));
    Ok(report)
}

pub const LINEAR_CONVERGENCE: Experiment = Experiment {
    name: "linear-convergence",
    about: "sup_{|t|≤τ} sup_x |e^{it(Δ−1)}φ − φ| on shrinking windows",
    params: &[
        param("alpha", "1.25,1.5", "decay exponents α"),
        param("N", "64,128", "cutoffs"),
        param("tau", "1e-1,1e-2,1e-3,1e-4", "window half-lengths, shrinking"),
        param("samples", "4", "draws per configuration"),
        param("times_per_side", "4", "times per side of each window"),
        param("oversample", "4", "grid exactness as a multiple of N"),
    ],
    run: linear_convergence,
};

fn linear_convergence(ctx: &Context) -> Result<Report, CliError> {
    let alphas = ctx.params.f64_list("alpha")?;
    let cutoffs = ctx.params.usize_list("N")?;
    let taus = ctx.params.f64_list("tau")?;
    let cfg = LinearExperimentConfig {
        samples: ctx.params.usize("samples")?,
        times_per_side: ctx.params.usize("times_per_side")?,
        oversample: ctx.params.usize("oversample")?,
        ..LinearExperimentConfig::default()
    };
    let mut report = ctx.report(&["alpha", "N", "tau", "median_sup", "max_sup"]);
    let mut series = Vec::new();
    for &alpha in &alphas {
        for &n in &cutoffs {
            let spec = RandomDataSpec::new(alpha, n, ctx.seed)?;
            let out = linear_convergence_experiment(&spec, &taus, &cfg)?;
            for row in &out.rows {
                report.row(vec![num(alpha), n.to_string(), num(row.tau), num(row.median), num(row.max)]);
            }
            let medians: Vec<f64> = out.rows.iter().map(|r| r.median).collect();
            report.check(
                format!("alpha={alpha} N={n} median step ratio"),
                max_step_ratio(&medians),
                Rule::Below(1.0),
            );
            series.push((
                format!("α={alpha} N={n}"),
                out.rows.iter().map(|r| (r.tau, r.median)).collect(),
            ));
        }
    }
    report.plots.push(log_plot("Linear flow on shrinking windows", "τ", "median sup", series));
    Ok(report)
}
