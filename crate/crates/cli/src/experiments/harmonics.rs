use s2flow::randomization::GaussianStream;
use s2flow::regression::fit_exponent;
use s2flow::sphere::{highest_weight_norm_sq, sogge_sharpness, weyl_sum, SpherePoint, SphereQuadrature};

use super::{log_plot, param, Context, Experiment};
use crate::report::{num, Report, Rule};
use crate::CliError;

const WEYL_TOL: f64 = 1e-8;
const SOGGE_TOL: f64 = 0.03;
const NORM_TOL: f64 = 0.02;

pub const WEYL_LAW: Experiment = Experiment {
    name: "weyl-law",
    about: "Pointwise identity Σ_k b_{n,k}(x)² = 2n+1 at random points",
    params: &[
        param("n_max", "64", "largest degree"),
        param("points", "200", "uniformly random evaluation points"),
    ],
    run: weyl_law,
};

fn weyl_law(ctx: &Context) -> Result<Report, CliError> {
    let n_max = ctx.params.usize("n_max")?;
    let count = ctx.params.usize("points")?;
    let mut stream = GaussianStream::new(ctx.seed, 0);
    let points: Vec<SpherePoint> = (0..count)
        .map(|_| {
            let polar = (1.0 - 2.0 * stream.next_uniform()).clamp(-1.0, 1.0).acos();
            SpherePoint::new(polar, std::f64::consts::TAU * stream.next_uniform())
        })
        .collect();
    let mut report = ctx.report(&["n", "max_residual"]);
    let mut worst: f64 = 0.0;
    for n in 0..=n_max {
        let mut row_max: f64 = 0.0;
        for &x in &points {
            row_max = row_max.max((weyl_sum(n, x)? - (2 * n + 1) as f64).abs());
        }
        worst = worst.max(row_max);
        report.row(vec![n.to_string(), num(row_max)]);
    }
    report.check("max Weyl residual", worst, Rule::Below(WEYL_TOL));
    Ok(report)
}

pub const SOGGE: Experiment = Experiment {
    name: "sogge",
    about: "L^p/L² ratios of highest-weight and zonal harmonics, and the highest-weight L² decay",
    params: &[
        param("n", "16..512", "degrees (list or dyadic range a..b)"),
        param("p_highest_weight", "4,6", "exponents for the highest-weight family"),
        param("p_zonal", "8,10", "exponents for the zonal family"),
    ],
    run: sogge,
};

fn sogge(ctx: &Context) -> Result<Report, CliError> {
    let degrees = ctx.params.usize_list("n")?;
    let p_hw = ctx.params.f64_list("p_highest_weight")?;
    let p_zonal = ctx.params.f64_list("p_zonal")?;
    let mut report = ctx.report(&["family", "p", "n", "value", "exact_quadrature"]);
    let mut series = Vec::new();
    let mut inexact = 0usize;

    let mut families: Vec<(&str, f64, f64)> = p_hw.iter().map(|&p| ("highest-weight", p, 0.5 * (0.5 - 1.0 / p))).collect();
    families.extend(p_zonal.iter().map(|&p| ("zonal", p, 0.5 - 2.0 / p)));
    for (family, p, target) in families {
        let mut points = Vec::new();
        for &n in &degrees {
            let q = SphereQuadrature::with_exact_degree(10 * n);
            let r = sogge_sharpness(n, p, &q);
            let value = if family == "zonal" { r.zonal } else { r.highest_weight };
            inexact += usize::from(!r.exact);
            points.push((n as f64, value));
            report.row(vec![family.into(), num(p), n.to_string(), num(value), r.exact.to_string()]);
        }
        let fit = fit_exponent(&points)?;
        report.check(format!("{family} p={p} exponent"), fit.slope, Rule::Within { target, tol: SOGGE_TOL });
        series.push((format!("{family} p={p}"), points));
    }
    report.check("inexact quadratures", inexact as f64, Rule::AtMost(0.0));

    let norms: Vec<(f64, f64)> = degrees
        .iter()
        .map(|&n| (n as f64, highest_weight_norm_sq(n).sqrt()))
        .collect();
    for &(n, v) in &norms {
        report.row(vec!["highest-weight L2 norm".into(), num(2.0), (n as usize).to_string(), num(v), "true".into()]);
    }
    let fit = fit_exponent(&norms)?;
    report.check("highest-weight L2 norm exponent", fit.slope, Rule::Within { target: -0.25, tol: NORM_TOL });
    series.push(("highest-weight L2 norm".into(), norms));

    report.plots.push(log_plot("Eigenfunction L^p ratios", "n", "ratio", series));
    Ok(report)
}
