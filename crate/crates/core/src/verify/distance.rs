use crate::control::{multiplier, ControlProblem, MyResult};
use crate::error::{Error, Result};
use crate::parabolic::{inner_q, lumped_inner_q, SpaceTimeField};

/// One row of the distance diagnostic
/// `α‖z_ref - z̄^γ‖² + ‖u_ref - ū^γ‖² + γ‖(ū^γ - u_b)_+‖² ≤ ‖μ̂‖²/γ + B_γ`,
/// where `B_γ = ⟨μ_max, (ū^γ - u_b)_+⟩_Q` uses the multiplier approximation
/// of the largest `γ` in the sweep in place of the exact measure multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceCheck {
    pub gamma: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `γ‖(ū^γ - u_b)_+‖²`, the penalty part of `lhs`.
    pub penalty_part: f64,
    /// `lhs - rhs`; nonpositive when the estimate holds.
    pub residual: f64,
}

impl DistanceCheck {
    pub fn holds(&self) -> bool {
        self.residual <= 0.0
    }
}

pub fn check_distance_estimate(
    prob: &ControlProblem,
    results: &[MyResult],
    z_ref: &SpaceTimeField,
    u_ref: &SpaceTimeField,
) -> Result<Vec<DistanceCheck>> {
    let Some(last) = results.iter().max_by(|a, b| a.gamma.total_cmp(&b.gamma)) else {
        return Err(Error::domain("distance estimate needs at least one result"));
    };
    let zeros = prob.zeros();
    zeros.check_shape(z_ref, "reference control")?;
    zeros.check_shape(u_ref, "reference state")?;
    let m = prob.solver().mass();
    let mu_max = multiplier(prob, last).field;
    let mu_hat_sq = prob.mu_hat_norm_sq();
    Ok(results
        .iter()
        .map(|r| {
            let dz = z_ref.zip_map(&r.control, |a, b| a - b);
            let du = u_ref.zip_map(&r.state, |a, b| a - b);
            let excess = r.state.zip_map(prob.upper_bound(), |u, b| (u - b).max(0.0));
            let penalty_part = r.gamma * lumped_inner_q(&excess, &excess);
            let lhs = prob.alpha() * inner_q(&dz, &dz, m) + inner_q(&du, &du, m) + penalty_part;
            let rhs = mu_hat_sq / r.gamma + lumped_inner_q(&mu_max, &excess);
            DistanceCheck {
                gamma: r.gamma,
                lhs,
                rhs,
                penalty_part,
                residual: lhs - rhs,
            }
        })
        .collect())
}
