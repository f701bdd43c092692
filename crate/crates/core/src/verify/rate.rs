use std::fmt::Write;
use std::ops::Range;

use crate::error::{Error, Result};

/// Violations at or below this value are treated as numerically zero.
const FLOOR: f64 = 100.0 * f64::EPSILON;
/// Leading sweep points skipped as pre-asymptotic.
const SKIP_LEADING: usize = 2;
const MIN_POINTS: usize = 3;

/// Least-squares fit of `log violation` against `log γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub gammas: Vec<f64>,
    pub violations: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Indices of the points used in the fit.
    pub window: Range<usize>,
}

/// Fits the decay rate over the asymptotic window: points above the
/// floor, after skipping up to two leading points (fewer when that would
/// leave less than three).
pub fn fit_rate(gammas: &[f64], violations: &[f64]) -> Result<RateReport> {
    if gammas.len() != violations.len() {
        return Err(Error::dimension(format!(
            "{} gammas against {} violations",
            gammas.len(),
            violations.len()
        )));
    }
    if gammas.iter().any(|g| !(*g > 0.0)) || violations.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::domain("gammas must be positive and violations nonnegative"));
    }
    // contiguous run of resolvable points from the start
    let resolvable = violations.iter().take_while(|v| **v > FLOOR).count();
    if resolvable < MIN_POINTS {
        return Err(Error::BelowResolution);
    }
    let skip = SKIP_LEADING.min(resolvable - MIN_POINTS);
    let window = skip..resolvable;

    let xs: Vec<f64> = gammas[window.clone()].iter().map(|g| g.ln()).collect();
    let ys: Vec<f64> = violations[window.clone()].iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("gammas in the fit window are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(RateReport {
        gammas: gammas.to_vec(),
        violations: violations.to_vec(),
        slope,
        intercept,
        r_squared,
        window,
    })
}

impl RateReport {
    /// `gamma,violation` rows followed by `# slope=<v> r2=<v> window=<i..j>`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma,violation\n");
        for (g, v) in self.gammas.iter().zip(&self.violations) {
            let _ = writeln!(out, "{g:.16e},{v:.16e}");
        }
        let _ = writeln!(
            out,
            "# slope={:.16e} r2={:.16e} window={}..{}",
            self.slope, self.r_squared, self.window.start, self.window.end
        );
        out
    }
}
