use s2flow::number_theory::{
    calibrate_convention, gauss_sum_direct, totient_average, GaussSumClosedForm, GAUSS_CONVENTION,
    MEAN_TOTIENT_RATIO,
};

use super::{log_plot, param, usage, Context, Experiment};
use crate::report::{num, Report, Rule};
use crate::CliError;

const GAUSS_TOL: f64 = 1e-9;
const TOTIENT_LOG_CONSTANT: f64 = 2.0;

pub const GAUSS_SUM: Experiment = Experiment {
    name: "gauss-sum",
    about: "Quadratic Gauss sums: magnitude √p and the closed form, over all odd p and all b",
    params: &[param("p_max", "199", "largest odd modulus")],
    run: gauss_sum,
};

fn gauss_sum(ctx: &Context) -> Result<Report, CliError> {
    let p_max = ctx.params.usize("p_max")? as u64;
    if p_max < 3 {
        return Err(usage("p_max must be at least 3"));
    }
    let mut report = ctx.report(&["p", "max_magnitude_residual", "max_closed_form_residual"]);
    let (mut worst_mag, mut worst_closed): (f64, f64) = (0.0, 0.0);
    for p in (3..=p_max).step_by(2) {
        let (mut mag, mut closed): (f64, f64) = (0.0, 0.0);
        for b in 0..p as i64 {
            let direct = gauss_sum_direct(p, b);
            mag = mag.max((direct.norm() - (p as f64).sqrt()).abs());
            let form = GaussSumClosedForm::for_coefficient(p, b, GAUSS_CONVENTION)?;
            closed = closed.max((form.value() - direct).norm());
        }
        worst_mag = worst_mag.max(mag);
        worst_closed = worst_closed.max(closed);
        report.row(vec![p.to_string(), num(mag), num(closed)]);
    }
    report.check("max magnitude residual", worst_mag, Rule::Below(GAUSS_TOL));
    report.check("max closed-form residual", worst_closed, Rule::Below(GAUSS_TOL));
    let calibrated = calibrate_convention() == Some(GAUSS_CONVENTION);
    report.check("convention recovered by search", f64::from(u8::from(calibrated)), Rule::AtLeast(1.0));
    Ok(report)
}

pub const TOTIENT: Experiment = Experiment {
    name: "totient",
    about: "Average order Σ_{n≤λ} φ(n)/n − 6λ/π² against 2 ln λ",
    params: &[param("lambda", "1e3,1e4,1e5,1e6", "summation limits")],
    run: totient,
};

fn totient(ctx: &Context) -> Result<Report, CliError> {
    let lambdas = ctx.params.f64_list("lambda")?;
    if lambdas.iter().any(|&l| l <= 1.0) {
        return Err(usage("lambda values must exceed 1"));
    }
    let mut report = ctx.report(&["lambda", "average", "residual", "residual_over_log"]);
    let mut worst: f64 = 0.0;
    let mut points = Vec::new();
    for &lambda in &lambdas {
        let avg = totient_average(lambda)?;
        let residual = avg - MEAN_TOTIENT_RATIO * lambda;
        let scaled = residual.abs() / lambda.ln();
        worst = worst.max(scaled);
        points.push((lambda, residual.abs()));
        report.row(vec![num(lambda), num(avg), num(residual), num(scaled)]);
    }
    report.check("max |residual| / ln λ", worst, Rule::AtMost(TOTIENT_LOG_CONSTANT));
    report.plots.push(log_plot("Totient average residual", "λ", "|residual|", vec![("residual".into(), points)]));
    Ok(report)
}
