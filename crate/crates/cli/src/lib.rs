//! Experiment runner for `s2flow`: one subcommand per numerical claim,
//! each producing a CSV report with tolerance verdicts.

pub mod experiments;
pub mod params;
pub mod report;

pub use experiments::{find, registry, Context, Experiment};
pub use params::{ParamSpec, Params};
pub use report::{Report, Rule, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] s2flow::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit status: 2 for usage errors, 3 for everything else
    /// (1 is reserved for failed verdicts).
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}
