use s2flow::nls::{
    evolve, gauge_transform, nls_pointwise_experiment, picard_growth, resonance_split, second_picard,
    wick_nonlinearity, Equation, EvolutionConfig, PicardRule, PointwiseConfig, TruncatedState,
};
use s2flow::randomization::{sample_data_at, RandomDataSpec};
use s2flow::sphere::{sobolev_norm, SphereQuadrature};

use super::{log_plot, max_step_ratio, param, usage, Context, Experiment};
use crate::report::{num, Report, Rule};
use crate::CliError;

const DOUBLING_TOL: f64 = 1e-6;
const R_SQUARED: f64 = 0.9;
const MASS_TOL: f64 = 1e-8;
const ORDER_TOL: f64 = 0.3;
const RESONANCE_TOL: f64 = 1e-10;
const GAUGE_TOL: f64 = 1e-6;

pub const PICARD: Experiment = Experiment {
    name: "picard",
    about: "RMS H^{α−1} norm of the second Picard iterate against √(ln N)",
    params: &[
        param("alpha", "1.5", "decay exponent α"),
        param("t", "0.1", "time"),
        param("N", "8..128", "cutoffs"),
        param("samples", "8", "draws per cutoff"),
        param("margin", "64", "Gauss–Legendre nodes beyond N(N+1)|t|/2"),
        param("doubling_N", "32", "cutoff at which node doubling is checked"),
    ],
    run: picard,
};

fn picard(ctx: &Context) -> Result<Report, CliError> {
    let alpha = ctx.params.f64("alpha")?;
    let t = ctx.params.f64("t")?;
    let cutoffs = ctx.params.usize_list("N")?;
    let samples = ctx.params.usize("samples")?;
    let rule = PicardRule {
        margin: ctx.params.usize("margin")?,
        ..PicardRule::default()
    };
    let doubling_n = ctx.params.usize("doubling_N")?;

    let growth = picard_growth(alpha, &cutoffs, t, samples, ctx.seed, &rule)?;
    let mut report = ctx.report(&["N", "sqrt_ln_N", "rms_norm", "nodes"]);
    for r in &growth.rows {
        report.row(vec![
            r.cutoff.to_string(),
            num((r.cutoff as f64).ln().sqrt()),
            num(r.norm),
            rule.nodes(r.cutoff, t).to_string(),
        ]);
    }
    report.check("slope against sqrt(ln N)", growth.fit.slope, Rule::Above(0.0));
    report.check("R² against sqrt(ln N)", growth.fit.r_squared, Rule::AtLeast(R_SQUARED));

    let phi = sample_data_at(&RandomDataSpec::new(alpha, doubling_n, ctx.seed)?, 0);
    let checked = second_picard(&phi, t, &PicardRule { check_doubling: true, tolerance: f64::INFINITY, ..rule })?;
    let change = checked.doubling_change.unwrap_or(f64::NAN);
    report.check(format!("node-doubling change at N={doubling_n}"), change, Rule::Below(DOUBLING_TOL));
    report.plots.push(log_plot(
        "Second Picard iterate",
        "N",
        "RMS norm",
        vec![(
            format!("α={alpha} t={t}"),
            growth.rows.iter().map(|r| (r.cutoff as f64, r.norm)).collect(),
        )],
    ));
    Ok(report)
}

pub const NLS_EVOLVE: Experiment = Experiment {
    name: "nls-evolve",
    about: "Truncated Wick NLS: mass drift, temporal order, resonance identity and gauge equivalence",
    params: &[
        param("N", "32", "cutoff"),
        param("alpha", "2.5", "decay exponent of the random data"),
        param("dt", "1e-3", "time step"),
        param("T", "1", "final time"),
        param("snapshot_every", "100", "steps between recorded states"),
        param("order_dt", "1e-3", "coarsest of three halving steps for the order estimate"),
        param("order_T", "0.25", "final time of the order runs"),
    ],
    run: nls_evolve,
};

fn nls_evolve(ctx: &Context) -> Result<Report, CliError> {
    let n = ctx.params.usize("N")?;
    let alpha = ctx.params.f64("alpha")?;
    let cfg = EvolutionConfig {
        dt: ctx.params.f64("dt")?,
        final_time: ctx.params.f64("T")?,
        snapshot_every: ctx.params.usize("snapshot_every")?,
        ..EvolutionConfig::default()
    };
    let order_dt = ctx.params.f64("order_dt")?;
    let order_t = ctx.params.f64("order_T")?;
    let u0 = TruncatedState::initial(sample_data_at(&RandomDataSpec::new(alpha, n, ctx.seed)?, 0));
    let mass0 = u0.mass();

    let wick = evolve(&u0, &cfg)?;
    let cubic = evolve(&u0, &EvolutionConfig { equation: Equation::Cubic, ..cfg })?;
    let gauged = gauge_transform(&cubic, mass0);
    let mut report = ctx.report(&["time", "mass", "mass_drift", "sobolev_norm", "gauge_difference"]);
    let (mut drift, mut gauge): (f64, f64) = (0.0, 0.0);
    for (w, g) in wick.states.iter().zip(&gauged.states) {
        let d = (w.mass() - mass0).abs();
        let gd = w.field.max_abs_diff(&g.field)?;
        drift = drift.max(d);
        gauge = gauge.max(gd);
        report.row(vec![
            num(w.time),
            num(w.mass()),
            num(d),
            num(sobolev_norm(&w.field, alpha - 1.0)),
            num(gd),
        ]);
    }
    report.check("max mass drift", drift, Rule::Below(MASS_TOL));

    let run = |dt: f64| -> Result<_, CliError> {
        let c = EvolutionConfig { dt, final_time: order_t, snapshot_every: 0, ..cfg };
        Ok(evolve(&u0, &c)?.last().field.clone())
    };
    let (a, b, c) = (run(order_dt)?, run(order_dt / 2.0)?, run(order_dt / 4.0)?);
    let order = (a.sub(&b)?.norm_sq() / b.sub(&c)?.norm_sq()).sqrt().log2();
    report.check("temporal order", order, Rule::Within { target: 4.0, tol: ORDER_TOL });

    let split = resonance_split(&u0.field)?;
    let direct = wick_nonlinearity(&u0.field, &SphereQuadrature::for_cutoff(n, 4))?;
    report.check("resonance identity residual", split.total()?.max_abs_diff(&direct)?, Rule::Below(RESONANCE_TOL));
    report.check("gauge difference", gauge, Rule::Below(GAUGE_TOL));
    Ok(report)
}

pub const NLS_POINTWISE: Experiment = Experiment {
    name: "nls-pointwise",
    about: "Truncated Wick NLS from random data: u(t) → φ on shrinking windows, and truncation stability",
    params: &[
        param("alpha", "1.25,1.5", "decay exponents α"),
        param("N", "64,128", "cutoffs"),
        param("tau", "1e-1,1e-2,1e-3,1e-4", "window half-lengths, shrinking"),
        param("samples", "2", "draws per configuration"),
        param("truncation_divisors", "8,4,2", "coarse cutoffs M = N/d"),
        param("dt", "1e-3", "largest time step"),
    ],
    run: nls_pointwise,
};

fn nls_pointwise(ctx: &Context) -> Result<Report, CliError> {
    let alphas = ctx.params.f64_list("alpha")?;
    let cutoffs = ctx.params.usize_list("N")?;
    let taus = ctx.params.f64_list("tau")?;
    let divisors = ctx.params.usize_list("truncation_divisors")?;
    if divisors.iter().any(|&d| d < 2) {
        return Err(usage("truncation divisors must be at least 2"));
    }
    let mut report = ctx.report(&["alpha", "N", "tau", "column", "M", "median"]);
    let mut series = Vec::new();
    for &alpha in &alphas {
        for &n in &cutoffs {
            let cfg = PointwiseConfig {
                samples: ctx.params.usize("samples")?,
                dt: ctx.params.f64("dt")?,
                truncations: divisors.iter().map(|d| n / d).collect(),
                ..PointwiseConfig::default()
            };
            let spec = RandomDataSpec::new(alpha, n, ctx.seed)?;
            let out = nls_pointwise_experiment(&spec, &taus, &cfg)?;
            let mut worst_truncation = f64::NEG_INFINITY;
            for row in &out.rows {
                let base = [num(alpha), n.to_string(), num(row.tau)];
                let mut push = |column: &str, m: String, v: f64| {
                    let mut cells = base.to_vec();
                    cells.extend([column.to_string(), m, num(v)]);
                    report.row(cells);
                };
                push("l2_sup", String::new(), row.median_l2);
                push("pointwise_sup", String::new(), row.median_pointwise);
                for e in &row.truncation {
                    push("truncation_l2_sup", e.coarse_cutoff.to_string(), e.median_l2);
                }
                let by_m: Vec<f64> = row.truncation.iter().map(|e| e.median_l2).collect();
                worst_truncation = worst_truncation.max(max_step_ratio(&by_m));
            }
            let l2: Vec<f64> = out.rows.iter().map(|r| r.median_l2).collect();
            let pw: Vec<f64> = out.rows.iter().map(|r| r.median_pointwise).collect();
            report.check(format!("alpha={alpha} N={n} L2-sup step ratio"), max_step_ratio(&l2), Rule::Below(1.0));
            report.check(format!("alpha={alpha} N={n} pointwise step ratio"), max_step_ratio(&pw), Rule::Below(1.0));
            report.check(
                format!("alpha={alpha} N={n} truncation step ratio in M"),
                worst_truncation,
                Rule::Below(1.0),
            );
            series.push((format!("α={alpha} N={n}"), out.rows.iter().map(|r| (r.tau, r.median_l2)).collect()));
        }
    }
    report.plots.push(log_plot("Nonlinear flow on shrinking windows", "τ", "median L² of sup", series));
    Ok(report)
}
