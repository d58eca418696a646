//! `key=value` parameters: declared defaults, an optional config file and
//! command-line overrides, merged in that order.

use std::collections::BTreeMap;

use crate::CliError;

/// A declared parameter with its default and a one-line description.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

/// Resolved parameters, in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    entries: Vec<(String, String)>,
}

/// Splits `key=value`, trimming whitespace around both parts.
pub fn parse_assignment(s: &str) -> Result<(String, String), CliError> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(CliError::Usage(format!("expected key=value, got `{s}`"))),
    }
}

/// Line-oriented config text: one `key=value` per line, `#` starts a
/// comment, blank lines are ignored.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_assignment)
        .collect()
}

impl Params {
    pub fn resolve(
        specs: &[ParamSpec],
        layers: &[&[(String, String)]],
    ) -> Result<Self, CliError> {
        let mut values: BTreeMap<&str, String> =
            specs.iter().map(|s| (s.key, s.default.to_string())).collect();
        for layer in layers {
            for (k, v) in layer.iter() {
                match values.get_mut(k.as_str()) {
                    Some(slot) => *slot = v.clone(),
                    None => {
                        let known: Vec<&str> = specs.iter().map(|s| s.key).collect();
                        return Err(CliError::Usage(format!(
                            "unknown parameter `{k}` (known: {})",
                            known.join(", ")
                        )));
                    }
                }
            }
        }
        Ok(Self {
            entries: specs
                .iter()
                .map(|s| (s.key.to_string(), values[s.key].clone()))
                .collect(),
        })
    }

    /// Defaults only.
    pub fn defaults(specs: &[ParamSpec]) -> Self {
        Self::resolve(specs, &[]).expect("defaults are always known keys")
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn raw(&self, key: &str) -> &str {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .unwrap_or_else(|| panic!("parameter `{key}` is not declared"))
    }

    fn bad(&self, key: &str, what: &str) -> CliError {
        CliError::Usage(format!("parameter {key}={} is not {what}", self.raw(key)))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        self.raw(key)
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| self.bad(key, "a finite number"))
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        self.raw(key).parse().map_err(|_| self.bad(key, "a non-negative integer"))
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let v: Option<Vec<f64>> = self
            .raw(key)
            .split(',')
            .map(|s| s.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect();
        v.filter(|v| !v.is_empty())
            .ok_or_else(|| self.bad(key, "a comma-separated list of numbers"))
    }

    /// Comma-separated integers, or `a..b` for the powers of two from `a`
    /// to `b` (both powers of two).
    pub fn usize_list(&self, key: &str) -> Result<Vec<usize>, CliError> {
        let raw = self.raw(key);
        if let Some((a, b)) = raw.split_once("..") {
            let (a, b): (usize, usize) = match (a.trim().parse(), b.trim().parse()) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Err(self.bad(key, "a range a..b")),
            };
            if !a.is_power_of_two() || !b.is_power_of_two() || a > b {
                return Err(self.bad(key, "a dyadic range a..b with a ≤ b powers of two"));
            }
            return Ok((a.trailing_zeros()..=b.trailing_zeros()).map(|k| 1 << k).collect());
        }
        let v: Option<Vec<usize>> = raw.split(',').map(|s| s.trim().parse().ok()).collect();
        v.filter(|v| !v.is_empty())
            .ok_or_else(|| self.bad(key, "a comma-separated list of integers"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPECS: &[ParamSpec] = &[
        ParamSpec { key: "N", default: "64..256", help: "" },
        ParamSpec { key: "r", default: "3", help: "" },
    ];

    #[test]
    fn layers_override_in_order() {
        let file = parse_config("# comment\nr = 4 # trailing\n\n").unwrap();
        let cli = vec![parse_assignment("r=5").unwrap()];
        let p = Params::resolve(SPECS, &[&file]).unwrap();
        assert_eq!(p.f64("r").unwrap(), 4.0);
        let p = Params::resolve(SPECS, &[&file, &cli]).unwrap();
        assert_eq!(p.f64("r").unwrap(), 5.0);
        assert_eq!(p.usize_list("N").unwrap(), vec![64, 128, 256]);
    }

    #[test]
    fn unknown_and_malformed_rejected() {
        let bad = vec![("q".to_string(), "1".to_string())];
        assert!(matches!(Params::resolve(SPECS, &[&bad]), Err(CliError::Usage(_))));
        assert!(parse_assignment("novalue").is_err());
        assert!(parse_assignment("=3").is_err());
        let p = Params::resolve(SPECS, &[&[("N".into(), "3..9".into())]]).unwrap();
        assert!(p.usize_list("N").is_err());
        let p = Params::resolve(SPECS, &[&[("r".into(), "inf".into())]]).unwrap();
        assert!(p.f64("r").is_err());
    }

    #[test]
    fn explicit_lists() {
        let p = Params::resolve(SPECS, &[&[("N".into(), "8, 12,20".into())]]).unwrap();
        assert_eq!(p.usize_list("N").unwrap(), vec![8, 12, 20]);
    }
}
