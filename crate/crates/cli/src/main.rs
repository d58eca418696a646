use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{value_parser, Arg, ArgAction, ArgMatches, Command};
use s2flow_cli::params::{parse_assignment, parse_config};
use s2flow_cli::{registry, CliError, Experiment, Report};

fn command() -> Command {
    let mut cmd = Command::new("s2flow")
        .about("Numerical experiments for Schrödinger flows on the two-sphere")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(
            Arg::new("seed")
                .long("seed")
                .global(true)
                .default_value("2024")
                .value_parser(value_parser!(u64))
                .help("Master seed for all random draws"),
        )
        .arg(
            Arg::new("out-dir")
                .long("out-dir")
                .global(true)
                .default_value(".")
                .value_parser(value_parser!(PathBuf))
                .help("Directory for <experiment>.csv and .svg"),
        )
        .arg(
            Arg::new("threads")
                .long("threads")
                .global(true)
                .value_parser(value_parser!(usize))
                .help("Worker threads (default: all cores)"),
        )
        .arg(
            Arg::new("config")
                .long("config")
                .global(true)
                .value_parser(value_parser!(PathBuf))
                .help("key=value file applied before command-line parameters"),
        )
        .arg(
            Arg::new("svg")
                .long("svg")
                .global(true)
                .action(ArgAction::SetTrue)
                .help("Also write a log–log SVG plot"),
        );
    for e in registry() {
        let params: Vec<String> = e
            .params
            .iter()
            .map(|p| format!("  {}={}  {}", p.key, p.default, p.help))
            .collect();
        cmd = cmd.subcommand(
            Command::new(e.name)
                .about(e.about)
                .after_help(format!("Parameters (key=value, defaults shown):\n{}", params.join("\n")))
                .arg(Arg::new("params").num_args(0..).value_name("KEY=VALUE")),
        );
    }
    cmd
}

fn run(experiment: &Experiment, m: &ArgMatches, sub: &ArgMatches) -> Result<Report, CliError> {
    if let Some(&threads) = m.get_one::<usize>("threads") {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure threads: {e}")))?;
    }
    let file = match sub.get_one::<PathBuf>("config") {
        Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
        None => Vec::new(),
    };
    let overrides = sub
        .get_many::<String>("params")
        .into_iter()
        .flatten()
        .map(|s| parse_assignment(s))
        .collect::<Result<Vec<_>, _>>()?;
    let seed = *sub.get_one::<u64>("seed").expect("defaulted");
    let report = experiment.run_with(seed, &[&file, &overrides])?;

    let dir = sub.get_one::<PathBuf>("out-dir").expect("defaulted");
    std::fs::create_dir_all(dir)?;
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    std::fs::write(dir.join(format!("{}.csv", experiment.name)), report.to_csv(&format!("unix {secs}")))?;
    if sub.get_flag("svg") {
        if let Some(svg) = report.to_svg() {
            std::fs::write(dir.join(format!("{}.svg", experiment.name)), svg)?;
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let m = command().get_matches();
    let (name, sub) = m.subcommand().expect("subcommand is required");
    let experiment = s2flow_cli::find(name).expect("subcommands come from the registry");
    match run(experiment, &m, sub) {
        Ok(report) => {
            for v in &report.verdicts {
                println!("{:4}  {}  ({:e})", if v.pass { "pass" } else { "FAIL" }, v.check, v.measured);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("s2flow {name}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
