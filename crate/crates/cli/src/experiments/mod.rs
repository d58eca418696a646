//! The experiment registry. Every experiment declares its parameters with
//! defaults; the defaults are the settings the acceptance suite runs.

mod arithmetic;
mod counterexample;
mod harmonics;
mod nls;
mod random;

use crate::params::{ParamSpec, Params};
use crate::report::{Plot, Report, Series};
use crate::CliError;

pub type RunFn = fn(&Context) -> Result<Report, CliError>;

pub struct Experiment {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [ParamSpec],
    pub run: RunFn,
}

impl Experiment {
    /// Resolves `layers` over the declared defaults and runs.
    pub fn run_with(&self, seed: u64, layers: &[&[(String, String)]]) -> Result<Report, CliError> {
        let params = Params::resolve(self.params, layers)?;
        (self.run)(&Context {
            name: self.name,
            seed,
            params,
        })
    }
}

pub struct Context {
    pub name: &'static str,
    pub seed: u64,
    pub params: Params,
}

impl Context {
    fn report(&self, columns: &[&str]) -> Report {
        Report::new(self.name, self.seed, self.params.entries(), columns)
    }
}

static REGISTRY: &[Experiment] = &[
    harmonics::WEYL_LAW,
    harmonics::SOGGE,
    arithmetic::GAUSS_SUM,
    arithmetic::TOTIENT,
    counterexample::COUNTEREXAMPLE,
    counterexample::MAXIMAL_SCALING,
    random::RANDOM_MOMENTS,
    random::CHAOS,
    random::LINEAR_CONVERGENCE,
    nls::PICARD,
    nls::NLS_EVOLVE,
    nls::NLS_POINTWISE,
];

pub fn registry() -> &'static [Experiment] {
    REGISTRY
}

pub fn find(name: &str) -> Option<&'static Experiment> {
    REGISTRY.iter().find(|e| e.name == name)
}

const fn param(key: &'static str, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec { key, default, help }
}

/// Largest ratio of consecutive values: below 1 iff strictly decreasing.
fn max_step_ratio(values: &[f64]) -> f64 {
    values
        .windows(2)
        .map(|w| w[1] / w[0])
        .fold(f64::NEG_INFINITY, f64::max)
}

fn log_plot(title: &str, x_label: &str, y_label: &str, series: Vec<(String, Vec<(f64, f64)>)>) -> Plot {
    Plot {
        title: title.to_string(),
        x_label: x_label.to_string(),
        y_label: y_label.to_string(),
        series: series
            .into_iter()
            .map(|(name, points)| Series { name, points })
            .collect(),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_defaults_parse() {
        let mut names: Vec<&str> = registry().iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 12);
        for e in registry() {
            let p = Params::defaults(e.params);
            assert_eq!(p.entries().len(), e.params.len(), "{}", e.name);
        }
    }

    #[test]
    fn step_ratio() {
        assert!(max_step_ratio(&[4.0, 2.0, 1.0]) < 1.0);
        assert_eq!(max_step_ratio(&[1.0, 2.0, 1.0]), 2.0);
    }
}
