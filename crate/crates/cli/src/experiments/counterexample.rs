use s2flow::counterexample::{
    build_exceptional_set, maximal_norm, maximal_scan, poisson_split, radial_window, schrodinger_sum,
    BumpProfile, NormConfig, TimeMode,
};
use s2flow::randomization::GaussianStream;
use s2flow::regression::fit_exponent;

use super::{log_plot, param, usage, Context, Experiment};
use crate::report::{num, Report, Rule};
use crate::CliError;

const CERTIFICATE_SPREAD: f64 = 3.0;
const SPLIT_TOL: f64 = 1e-6;
const MAXIMAL_TOL: f64 = 0.05;
const DATA_TOL: f64 = 0.03;

fn c0(ctx: &Context) -> Result<u64, CliError> {
    let c0 = ctx.params.usize("c0")?;
    if c0 < 2 {
        return Err(usage("c0 must be at least 2"));
    }
    Ok(c0 as u64)
}

pub const COUNTEREXAMPLE: Experiment = Experiment {
    name: "counterexample",
    about: "Certified lower bound MS_N/(N^{3/4}λ^N) on the exceptional arcs, and the Poisson split",
    params: &[
        param("N", "64..1024", "cutoffs"),
        param("c0", "4", "modulus window constant"),
        param("split_N", "128,256", "cutoffs for the Poisson split check"),
        param("split_points", "10", "random arc centers per split cutoff"),
    ],
    run: counterexample,
};

fn counterexample(ctx: &Context) -> Result<Report, CliError> {
    let cutoffs = ctx.params.usize_list("N")?;
    let c0 = c0(ctx)?;
    let split_cutoffs = ctx.params.usize_list("split_N")?;
    let split_points = ctx.params.usize("split_points")?;
    let mut report = ctx.report(&["kind", "N", "arcs", "measure", "value"]);

    let mut certs = Vec::with_capacity(cutoffs.len());
    for &n in &cutoffs {
        let set = build_exceptional_set(n, c0)?;
        let scan = maximal_scan(&set, &[radial_window(n).0], &TimeMode::Rational, &BumpProfile)?;
        certs.push(scan.certificate_min);
        report.row(vec![
            "certificate".into(),
            n.to_string(),
            set.arcs().len().to_string(),
            num(set.measure()),
            num(scan.certificate_min),
        ]);
    }
    let lo = certs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = certs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    report.check("min certificate", lo, Rule::Above(0.0));
    report.check("certificate max/min", hi / lo, Rule::Below(CERTIFICATE_SPREAD));

    let mut worst: f64 = 0.0;
    let mut stream = GaussianStream::new(ctx.seed, 0);
    for &n in &split_cutoffs {
        let set = build_exceptional_set(n, c0)?;
        let lam = radial_window(n).0;
        for _ in 0..split_points {
            let pick = ((stream.next_uniform() * set.arcs().len() as f64) as usize).min(set.arcs().len() - 1);
            let point = set.arcs()[pick].point;
            let split = poisson_split(n, point, lam, &BumpProfile)?;
            let direct = schrodinger_sum(n, point.time(), point.angle(), lam, &BumpProfile);
            let rel = (split.total() - direct).norm() / direct.norm();
            worst = worst.max(rel);
            report.row(vec![
                format!("split p={} q={}", point.p(), point.q()),
                n.to_string(),
                set.arcs().len().to_string(),
                num(set.measure()),
                num(rel),
            ]);
        }
    }
    report.check("max split relative error", worst, Rule::Below(SPLIT_TOL));
    Ok(report)
}

pub const MAXIMAL_SCALING: Experiment = Experiment {
    name: "maximal-scaling",
    about: "Growth of the L^r maximal norm over the exceptional region against ‖f_N‖_{H^s}",
    params: &[
        param("N", "64..1024", "cutoffs"),
        param("r", "3", "Lebesgue exponent of the maximal norm"),
        param("s", "0.3", "Sobolev exponent of the data norm"),
        param("c0", "4", "modulus window constant"),
    ],
    run: maximal_scaling,
};

fn maximal_scaling(ctx: &Context) -> Result<Report, CliError> {
    let cutoffs = ctx.params.usize_list("N")?;
    let r = ctx.params.f64("r")?;
    let s = ctx.params.f64("s")?;
    let cfg = NormConfig {
        c0: c0(ctx)?,
        ..NormConfig::default()
    };
    let mut report = ctx.report(&["N", "arcs", "measure", "maximal_norm", "data_norm", "ratio"]);
    let (mut maximal, mut data, mut ratio) = (Vec::new(), Vec::new(), Vec::new());
    for &n in &cutoffs {
        let m = maximal_norm(n, r, s, &cfg, &BumpProfile)?;
        let x = n as f64;
        maximal.push((x, m.maximal_norm));
        data.push((x, m.data_norm));
        ratio.push((x, m.ratio));
        report.row(vec![
            n.to_string(),
            m.arc_count.to_string(),
            num(m.measure),
            num(m.maximal_norm),
            num(m.data_norm),
            num(m.ratio),
        ]);
    }
    let target = 0.75 - 0.5 / r;
    report.check("maximal-norm exponent", fit_exponent(&maximal)?.slope, Rule::Within { target, tol: MAXIMAL_TOL });
    report.check("data-norm exponent", fit_exponent(&data)?.slope, Rule::Within { target: s + 0.25, tol: DATA_TOL });
    report.check("ratio exponent", fit_exponent(&ratio)?.slope, Rule::Above(0.0));
    report.plots.push(log_plot(
        "Maximal norm against data norm",
        "N",
        "norm",
        vec![("maximal".into(), maximal), ("data".into(), data), ("ratio".into(), ratio)],
    ));
    Ok(report)
}
