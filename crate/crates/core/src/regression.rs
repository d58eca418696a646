//! Ordinary least squares, mostly used on log–log data to read off
//! scaling exponents.

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl LinearFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Least-squares line through `(x, y)`.
///
/// A series with no variance in `y` that is fitted exactly reports
/// `r_squared = 1`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        return invalid(format!("{} abscissae but {} ordinates", xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return invalid("a line fit needs at least two points");
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return invalid("non-finite value in regression data");
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return invalid("abscissae are all equal");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res <= f64::EPSILON {
        1.0
    } else {
        0.0
    };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Fits `y ≈ e^intercept · x^slope` by least squares on `(ln x, ln y)`.
///
/// Requires at least four points, all strictly positive.
pub fn fit_exponent(series: &[(f64, f64)]) -> Result<LinearFit> {
    if series.len() < 4 {
        return invalid(format!(
            "exponent fit needs at least 4 points, got {}",
            series.len()
        ));
    }
    if let Some((x, y)) = series.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return invalid(format!("non-positive point ({x}, {y}) in log-log fit"));
    }
    let (lx, ly): (Vec<f64>, Vec<f64>) = series.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    linear_fit(&lx, &ly)
}
