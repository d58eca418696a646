//! Experiment reports: a data table, tolerance verdicts and optional
//! log–log plots, written as CSV and SVG.

use std::fmt::Write as _;

/// A declared tolerance rule. Verdicts are computed from it when the
/// measurement is recorded, never afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rule {
    Below(f64),
    AtMost(f64),
    AtLeast(f64),
    Above(f64),
    Within { target: f64, tol: f64 },
}

impl Rule {
    pub fn holds(self, x: f64) -> bool {
        match self {
            Rule::Below(t) => x < t,
            Rule::AtMost(t) => x <= t,
            Rule::AtLeast(t) => x >= t,
            Rule::Above(t) => x > t,
            Rule::Within { target, tol } => (x - target).abs() <= tol,
        }
    }

    fn columns(self) -> (&'static str, f64, f64) {
        match self {
            Rule::Below(t) => ("<", t, 0.0),
            Rule::AtMost(t) => ("<=", t, 0.0),
            Rule::AtLeast(t) => (">=", t, 0.0),
            Rule::Above(t) => (">", t, 0.0),
            Rule::Within { target, tol } => ("within", target, tol),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub measured: f64,
    pub rule: Rule,
    pub pass: bool,
}

impl Verdict {
    pub fn new(check: impl Into<String>, measured: f64, rule: Rule) -> Self {
        Self {
            check: check.into(),
            measured,
            pass: measured.is_finite() && rule.holds(measured),
            rule,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub experiment: String,
    pub seed: u64,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub verdicts: Vec<Verdict>,
    pub plots: Vec<Plot>,
}

/// Shortest round-trip formatting, so equal values give equal bytes.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

impl Report {
    pub fn new(experiment: &str, seed: u64, params: &[(String, String)], columns: &[&str]) -> Self {
        Self {
            experiment: experiment.to_string(),
            seed,
            params: params.to_vec(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            verdicts: Vec::new(),
            plots: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn check(&mut self, check: impl Into<String>, measured: f64, rule: Rule) {
        self.verdicts.push(Verdict::new(check, measured, rule));
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// `#`-prefixed header (experiment, timestamp, seed, every parameter),
    /// the data table, then a `# verdicts` marker and the verdict table.
    /// Only the `# generated` line depends on when it was written.
    pub fn to_csv(&self, generated: &str) -> String {
        let mut out = format!(
            "# experiment: {}\n# generated: {generated}\n# seed: {}\n",
            self.experiment, self.seed
        );
        for (k, v) in &self.params {
            let _ = writeln!(out, "# param: {k}={v}");
        }
        out.push_str(&table(&self.columns, &self.rows));
        out.push_str("# verdicts\n");
        let rows: Vec<Vec<String>> = self
            .verdicts
            .iter()
            .map(|v| {
                let (op, threshold, tol) = v.rule.columns();
                vec![
                    v.check.clone(),
                    num(v.measured),
                    op.to_string(),
                    num(threshold),
                    num(tol),
                    if v.pass { "pass" } else { "fail" }.to_string(),
                ]
            })
            .collect();
        let header = ["check", "measured", "rule", "threshold", "tolerance", "verdict"].map(String::from);
        out.push_str(&table(&header, &rows));
        out
    }

    /// One log–log panel per plot, stacked vertically; `None` without plots.
    pub fn to_svg(&self) -> Option<String> {
        if self.plots.is_empty() {
            return None;
        }
        let (w, h) = (640.0, 400.0);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{}" font-family="sans-serif" font-size="12">"#,
            h * self.plots.len() as f64
        );
        for (i, plot) in self.plots.iter().enumerate() {
            let _ = write!(s, "{}", panel(plot, 0.0, h * i as f64, w, h));
        }
        s.push_str("</svg>\n");
        Some(s)
    }
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn panel(plot: &Plot, x0: f64, y0: f64, w: f64, h: f64) -> String {
    let (ml, mr, mt, mb) = (70.0, 150.0, 30.0, 45.0);
    let pts: Vec<(f64, f64)> = plot
        .series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .map(|(x, y)| (x.log10(), y.log10()))
        .collect();
    let mut s = String::new();
    let _ = writeln!(s, r#"<g transform="translate({x0},{y0})">"#);
    let _ = writeln!(s, r#"<text x="{}" y="18" text-anchor="middle">{}</text>"#, w / 2.0, escape(&plot.title));
    if pts.is_empty() {
        s.push_str("</g>\n");
        return s;
    }
    let bounds = |sel: fn(&(f64, f64)) -> f64| {
        let lo = pts.iter().map(sel).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(sel).fold(f64::NEG_INFINITY, f64::max);
        if hi - lo < 1e-9 { (lo - 0.5, hi + 0.5) } else { (lo, hi) }
    };
    let (xl, xh) = bounds(|p| p.0);
    let (yl, yh) = bounds(|p| p.1);
    let (pw, ph) = (w - ml - mr, h - mt - mb);
    let sx = |x: f64| ml + (x - xl) / (xh - xl) * pw;
    let sy = |y: f64| mt + (yh - y) / (yh - yl) * ph;
    let _ = writeln!(
        s,
        "<rect x=\"{ml}\" y=\"{mt}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"#444\"/>"
    );
    for (v, anchor_x, anchor_y) in [(xl, sx(xl), mt + ph + 15.0), (xh, sx(xh), mt + ph + 15.0)] {
        let _ = writeln!(s, r#"<text x="{anchor_x}" y="{anchor_y}" text-anchor="middle">{:.3e}</text>"#, 10f64.powf(v));
    }
    for v in [yl, yh] {
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{:.3e}</text>"#, ml - 5.0, sy(v) + 4.0, 10f64.powf(v));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, ml + pw / 2.0, h - 8.0, escape(&plot.x_label));
    let _ = writeln!(
        s,
        r#"<text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">{}</text>"#,
        mt + ph / 2.0,
        mt + ph / 2.0,
        escape(&plot.y_label)
    );
    for (k, series) in plot.series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let coords: Vec<String> = series
            .points
            .iter()
            .filter(|&&(x, y)| x > 0.0 && y > 0.0)
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x.log10()), sy(y.log10())))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, coords.join(" "));
        for c in &coords {
            let (cx, cy) = c.split_once(',').unwrap();
            let _ = writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="2.5" fill="{color}"/>"#);
        }
        let ly = mt + 12.0 + 16.0 * k as f64;
        let _ = writeln!(s, r#"<text x="{}" y="{ly}" fill="{color}">{}</text>"#, ml + pw + 10.0, escape(&series.name));
    }
    s.push_str("</g>\n");
    s
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    // writing to memory cannot fail
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules() {
        assert!(Rule::Below(1.0).holds(0.5) && !Rule::Below(1.0).holds(1.0));
        assert!(Rule::AtMost(1.0).holds(1.0));
        assert!(Rule::Within { target: 4.0, tol: 0.3 }.holds(3.75));
        assert!(!Rule::Within { target: 4.0, tol: 0.3 }.holds(3.6));
        assert!(!Verdict::new("x", f64::NAN, Rule::AtMost(1.0)).pass);
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::new("demo", 7, &[("N".into(), "8".into())], &["n", "value"]);
        r.row(vec!["8".into(), num(0.25)]);
        r.check("slope, fitted", -0.24, Rule::Within { target: -0.25, tol: 0.02 });
        let csv = r.to_csv("unix 0");
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# experiment: demo");
        assert_eq!(lines[4], "n,value");
        assert_eq!(lines[5], "8,2.5e-1");
        assert_eq!(lines[8], "\"slope, fitted\",-2.4e-1,within,-2.5e-1,2e-2,pass");
        assert!(r.passed());
        assert!(r.to_svg().is_none());
    }

    #[test]
    fn svg_has_one_polyline_per_series() {
        let mut r = Report::new("demo", 0, &[], &["x"]);
        r.plots.push(Plot {
            title: "t".into(),
            x_label: "N".into(),
            y_label: "y".into(),
            series: vec![
                Series { name: "a".into(), points: vec![(1.0, 1.0), (10.0, 100.0)] },
                Series { name: "b".into(), points: vec![(1.0, 2.0), (10.0, 20.0)] },
            ],
        });
        let svg = r.to_svg().unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.starts_with("<svg"));
    }
}
