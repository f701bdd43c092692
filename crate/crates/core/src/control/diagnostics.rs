use super::objective::{shifted_violation, unregularized_objective};
use super::{objective, ControlProblem, MyResult};
use crate::error::{Error, Result};
use crate::parabolic::{lumped_inner_q, SpaceTimeField};

/// `μ_γ = (μ̂ + γ(ū^γ - u_b))_+` and `⟨u_b - ū^γ, μ_γ⟩_Q`.
#[derive(Debug, Clone)]
pub struct MultiplierApprox {
    pub field: SpaceTimeField,
    pub complementarity: f64,
}

pub fn multiplier(prob: &ControlProblem, result: &MyResult) -> MultiplierApprox {
    let field = shifted_violation(prob, result.gamma, &result.state);
    let slack = prob.upper_bound().zip_map(&result.state, |b, u| b - u);
    MultiplierApprox {
        complementarity: lumped_inner_q(&slack, &field),
        field,
    }
}

/// `min_{k,i} (u_b - u)(t_k, x_i)` for the state of `z_hat`; positive values
/// certify a discrete Slater point.
pub fn slater_margin(prob: &ControlProblem, z_hat: &SpaceTimeField) -> Result<f64> {
    prob.check_admissible(z_hat)?;
    let u = prob.state(z_hat)?;
    Ok(prob
        .upper_bound()
        .zip_map(&u, |b, u| b - u)
        .min_value())
}

/// The quantities of the chain
/// `J(z̄^γ) ≤ J^γ(z̄^γ) ≤ J^γ(z_ref) ≤ J(z_ref) + ‖μ̂‖²/(2γ)`
/// together with the violation and solution bounds derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainReport {
    pub gamma: f64,
    /// `J(z̄^γ)`
    pub j_opt: f64,
    /// `J^γ(z̄^γ)`
    pub j_gamma_opt: f64,
    /// `J^γ(z_ref)`
    pub j_gamma_ref: f64,
    /// `J(z_ref)`
    pub j_ref: f64,
    /// `‖μ̂‖²_Q`
    pub mu_hat_sq: f64,
    /// `‖(ū^γ - u_b)_+‖²_Q`
    pub violation_sq: f64,
    /// `max(‖ū^γ - u_d‖²_Q, α‖z̄^γ‖²_Q)`
    pub solution_size: f64,
    /// `min (u_b - u_ref)`; the chain assumes it is nonnegative.
    pub reference_margin: f64,
}

fn relative_slack(lower: f64, upper: f64) -> f64 {
    let scale = lower.abs().max(upper.abs()).max(f64::MIN_POSITIVE);
    (upper - lower) / scale
}

impl ChainReport {
    /// Relative slack of each of the three chain inequalities.
    pub fn slacks(&self) -> [f64; 3] {
        [
            relative_slack(self.j_opt, self.j_gamma_opt),
            relative_slack(self.j_gamma_opt, self.j_gamma_ref),
            relative_slack(self.j_gamma_ref, self.j_ref + self.mu_hat_sq / (2.0 * self.gamma)),
        ]
    }

    pub fn chain_holds(&self, tol: f64) -> bool {
        self.slacks().iter().all(|s| *s >= -tol)
    }

    /// `(2/γ)(J(z_ref) - J(z̄^γ) + ‖μ̂‖²/(2γ))`, the bound on `violation_sq`.
    pub fn violation_bound(&self) -> f64 {
        2.0 / self.gamma * (self.j_ref - self.j_opt + self.mu_hat_sq / (2.0 * self.gamma))
    }

    /// `2 (J(z_ref) + ½‖μ̂‖²)`, the bound on `solution_size`.
    pub fn solution_bound(&self) -> f64 {
        2.0 * (self.j_ref + 0.5 * self.mu_hat_sq)
    }

    pub fn violation_bound_holds(&self, tol: f64) -> bool {
        relative_slack(self.violation_sq, self.violation_bound()) >= -tol
    }

    pub fn solution_bound_holds(&self, tol: f64) -> bool {
        relative_slack(self.solution_size, self.solution_bound()) >= -tol
    }
}

pub fn chain_report(prob: &ControlProblem, result: &MyResult, z_ref: &SpaceTimeField) -> Result<ChainReport> {
    if !prob.zeros().same_shape(z_ref) {
        return Err(Error::dimension("reference control does not match the problem"));
    }
    let (j_gamma_ref, _) = objective(prob, result.gamma, z_ref)?;
    let j_ref = unregularized_objective(prob, z_ref)?;
    let m = prob.solver().mass();
    let misfit = result.state.zip_map(prob.desired(), |a, b| a - b);
    let excess = result.state.zip_map(prob.upper_bound(), |u, b| (u - b).max(0.0));
    Ok(ChainReport {
        gamma: result.gamma,
        j_opt: result.unregularized(),
        j_gamma_opt: result.objective(),
        j_gamma_ref,
        j_ref,
        mu_hat_sq: prob.mu_hat_norm_sq(),
        violation_sq: lumped_inner_q(&excess, &excess),
        solution_size: misfit
            .norm_q(m)
            .powi(2)
            .max(prob.alpha() * result.control.norm_q(m).powi(2)),
        reference_margin: slater_margin(prob, z_ref)?,
    })
}
