use std::path::Path;
use std::process::{Command, Output};

fn s2flow(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_s2flow"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(format!("{name}.csv"))).unwrap()
}

fn without_timestamp(csv: &str) -> String {
    csv.lines()
        .filter(|l| !l.starts_with("# generated:"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn gauss_sum_passes_and_echoes_params() {
    let dir = tempfile::tempdir().unwrap();
    let out = s2flow(dir.path(), &["gauss-sum", "p_max=61"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "gauss-sum");
    assert!(csv.starts_with("# experiment: gauss-sum\n# generated: unix "));
    assert!(csv.contains("# seed: 2024\n# param: p_max=61\n"));
    assert!(csv.contains("\np,max_magnitude_residual,max_closed_form_residual\n"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("61,")).count(), 1);
}

#[test]
fn unknown_parameter_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = s2flow(dir.path(), &["weyl-law", "n_maximum=3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown parameter `n_maximum`"));
    assert!(!dir.path().join("weyl-law.csv").exists());

    let out = s2flow(dir.path(), &["weyl-law", "n_max"]);
    assert_eq!(out.status.code(), Some(2));
    let out = s2flow(dir.path(), &["no-such-experiment"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn reruns_are_byte_identical_up_to_timestamp() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let out = s2flow(dir.path(), &["--seed", "11", "chaos", "samples=2000", "tail_samples=2000"]);
        assert!(out.status.code() == Some(0) || out.status.code() == Some(1));
    }
    let (x, y) = (read(a.path(), "chaos"), read(b.path(), "chaos"));
    assert_eq!(without_timestamp(&x), without_timestamp(&y));
    assert!(x.contains("# seed: 11\n"));
}

#[test]
fn failed_verdict_sets_exit_code_one() {
    // too few low degrees for the asymptotic exponents
    let dir = tempfile::tempdir().unwrap();
    let out = s2flow(dir.path(), &["sogge", "n=1,2,3,4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(read(dir.path(), "sogge").contains(",fail\n"));
}

#[test]
fn config_file_then_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("weyl.cfg");
    std::fs::write(&cfg, "# small run\nn_max = 5\npoints = 7\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = s2flow(dir.path(), &["--config", cfg, "weyl-law", "points=3"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = read(dir.path(), "weyl-law");
    assert!(csv.contains("# param: n_max=5\n# param: points=3\n"), "{csv}");
}

#[test]
fn svg_written_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let out = s2flow(dir.path(), &["--svg", "--threads", "1", "totient", "lambda=1e2,1e3"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("totient.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

/// Every verdict must be recomputable from its own CSV row.
#[test]
fn verdicts_recompute_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    s2flow(dir.path(), &["sogge", "n=1,2,3,4"]);
    s2flow(dir.path(), &["counterexample", "N=64,128,256,512", "split_N=128", "split_points=3"]);
    for name in ["sogge", "counterexample"] {
        let csv = read(dir.path(), name);
        let section = csv.split("# verdicts\n").nth(1).unwrap();
        let mut rows = csv::Reader::from_reader(section.as_bytes());
        let mut seen = 0;
        for rec in rows.records() {
            let rec = rec.unwrap();
            let x: f64 = rec[1].parse().unwrap();
            let t: f64 = rec[3].parse().unwrap();
            let tol: f64 = rec[4].parse().unwrap();
            let holds = match &rec[2] {
                "<" => x < t,
                "<=" => x <= t,
                ">" => x > t,
                ">=" => x >= t,
                "within" => (x - t).abs() <= tol,
                other => panic!("unknown rule {other}"),
            };
            assert_eq!(&rec[5], if holds { "pass" } else { "fail" }, "{name}: {rec:?}");
            seen += 1;
        }
        assert!(seen > 0);
    }
}
