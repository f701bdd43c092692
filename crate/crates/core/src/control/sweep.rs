use rayon::prelude::*;

use super::{minimize, ControlProblem, MinimizeOptions, MyResult};
use crate::error::{Error, Result};
use crate::parabolic::SpaceTimeField;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SweepMode {
    /// Each solve starts from the previous optimizer.
    #[default]
    WarmStart,
    /// Every `γ` starts from `z_init`; solves run in parallel.
    ColdParallel,
}

/// `[4^0, 4^1, ..., 4^k_max]`.
pub fn pow4_schedule(k_max: u32) -> Vec<f64> {
    (0..=k_max).map(|k| 4f64.powi(k as i32)).collect()
}

/// Solves the regularized problem along an increasing `γ` schedule.
/// Non-converged entries are flagged in their result; the sweep continues.
pub fn gamma_sweep(
    prob: &ControlProblem,
    schedule: &[f64],
    z_init: &SpaceTimeField,
    options: &MinimizeOptions,
    mode: SweepMode,
) -> Result<Vec<MyResult>> {
    if schedule.is_empty() {
        return Err(Error::domain("gamma schedule is empty"));
    }
    if schedule.iter().any(|g| !(*g > 0.0 && g.is_finite())) {
        return Err(Error::domain("gamma values must be positive"));
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("gamma schedule must be strictly increasing"));
    }
    match mode {
        SweepMode::WarmStart => {
            let mut results: Vec<MyResult> = Vec::with_capacity(schedule.len());
            for &gamma in schedule {
                let start = results.last().map_or(z_init, |r| &r.control);
                let result = minimize(prob, gamma, start, options)?;
                results.push(result);
            }
            Ok(results)
        }
        SweepMode::ColdParallel => schedule
            .par_iter()
            .map(|&gamma| minimize(prob, gamma, z_init, options))
            .collect(),
    }
}
