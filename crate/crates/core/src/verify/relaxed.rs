use crate::control::ControlProblem;
use crate::error::Result;
use crate::parabolic::{inner_q, SpaceTimeField};

/// Value of `-⟨u_d⁻, u⟩_Q - ‖u‖²_Q - α‖z‖²_Q` and whether it is `≤ -ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxedCondition {
    pub lhs: f64,
    pub epsilon: f64,
    pub holds: bool,
}

/// Sufficient condition for the linear violation rate when `u_d` changes
/// sign; `u_d⁻ = max(-u_d, 0)`.
pub fn check_relaxed_condition(
    prob: &ControlProblem,
    z_ref: &SpaceTimeField,
    u_ref: &SpaceTimeField,
    epsilon: f64,
) -> Result<RelaxedCondition> {
    let zeros = prob.zeros();
    zeros.check_shape(z_ref, "reference control")?;
    zeros.check_shape(u_ref, "reference state")?;
    let m = prob.solver().mass();
    let negative = prob.desired().map(|v| (-v).max(0.0));
    let lhs = -inner_q(&negative, u_ref, m) - inner_q(u_ref, u_ref, m) - prob.alpha() * inner_q(z_ref, z_ref, m);
    Ok(RelaxedCondition {
        lhs,
        epsilon,
        holds: lhs <= -epsilon,
    })
}
