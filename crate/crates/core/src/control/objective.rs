use super::ControlProblem;
use crate::error::{Error, Result};
use crate::parabolic::{inner_q, lumped_inner_q, SpaceTimeField};

/// The three terms of `J^γ`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ObjectiveParts {
    /// `½‖u - u_d‖²_Q`
    pub track: f64,
    /// `(α/2)‖z‖²_Q`
    pub control: f64,
    /// `(1/2γ)‖(μ̂ + γ(u - u_b))_+‖²_Q`
    pub penalty: f64,
}

impl ObjectiveParts {
    pub fn total(&self) -> f64 {
        self.track + self.control + self.penalty
    }

    /// `J(z)`, the objective without the penalty.
    pub fn unregularized(&self) -> f64 {
        self.track + self.control
    }
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("gamma must be positive, got {gamma}")))
    }
}

/// `(μ̂ + γ(u - u_b))_+`, the multiplier approximation of a state.
pub(crate) fn shifted_violation(prob: &ControlProblem, gamma: f64, u: &SpaceTimeField) -> SpaceTimeField {
    let mut q = u.clone();
    let values = q.values_mut();
    let ub = prob.upper_bound().values();
    let mu = prob.mu_hat().values();
    for ((v, b), m) in values.iter_mut().zip(ub).zip(mu) {
        *v = (m + gamma * (*v - b)).max(0.0);
    }
    q
}

pub(crate) fn parts_for_state(
    prob: &ControlProblem,
    gamma: f64,
    z: &SpaceTimeField,
    u: &SpaceTimeField,
    multiplier: &SpaceTimeField,
) -> ObjectiveParts {
    let m = prob.solver().mass();
    let misfit = u.zip_map(prob.desired(), |a, b| a - b);
    ObjectiveParts {
        track: 0.5 * inner_q(&misfit, &misfit, m),
        control: 0.5 * prob.alpha() * inner_q(z, z, m),
        penalty: lumped_inner_q(multiplier, multiplier) / (2.0 * gamma),
    }
}

/// Everything computed in one objective + gradient pass.
#[derive(Debug, Clone)]
pub(crate) struct Evaluation {
    pub parts: ObjectiveParts,
    pub state: SpaceTimeField,
    pub adjoint: SpaceTimeField,
    pub gradient: SpaceTimeField,
}

impl Evaluation {
    /// Builds the adjoint and gradient for a known state `u` of `z`.
    pub fn at_state(prob: &ControlProblem, gamma: f64, z: &SpaceTimeField, u: SpaceTimeField) -> Result<Self> {
        let multiplier = shifted_violation(prob, gamma, &u);
        let parts = parts_for_state(prob, gamma, z, &u, &multiplier);

        // dual load dt [M (u - u_d) + h (μ̂ + γ(u - u_b))_+]
        let solver = prob.solver();
        let m = solver.mass();
        let dt = solver.grid().dt();
        let h = m.lumped();
        let mut dual = prob.zeros();
        let mut misfit = vec![0.0; u.nodes()];
        for k in 1..u.slots() {
            for ((d, a), b) in misfit.iter_mut().zip(u.slot(k)).zip(prob.desired().slot(k)) {
                *d = a - b;
            }
            let out = dual.slot_mut(k);
            m.apply_into(&misfit, out);
            for (o, q) in out.iter_mut().zip(multiplier.slot(k)) {
                *o = dt * (*o + h * q);
            }
        }
        let adjoint = solver.adjoint_dual(&dual)?;
        let mut gradient = adjoint.clone();
        gradient.axpy(prob.alpha(), z);
        gradient.slot_mut(0).fill(0.0);
        Ok(Self {
            parts,
            state: u,
            adjoint,
            gradient,
        })
    }

    pub fn new(prob: &ControlProblem, gamma: f64, z: &SpaceTimeField) -> Result<Self> {
        check_gamma(gamma)?;
        prob.check_admissible(z)?;
        let u = prob.state(z)?;
        Self::at_state(prob, gamma, z, u)
    }
}

/// `J^γ(z)` and its three parts.
pub fn objective(prob: &ControlProblem, gamma: f64, z: &SpaceTimeField) -> Result<(f64, ObjectiveParts)> {
    check_gamma(gamma)?;
    prob.check_admissible(z)?;
    let u = prob.state(z)?;
    let multiplier = shifted_violation(prob, gamma, &u);
    let parts = parts_for_state(prob, gamma, z, &u, &multiplier);
    Ok((parts.total(), parts))
}

/// `J(z) = ½‖u - u_d‖²_Q + (α/2)‖z‖²_Q`.
pub fn unregularized_objective(prob: &ControlProblem, z: &SpaceTimeField) -> Result<f64> {
    prob.zeros().check_shape(z, "control")?;
    let u = prob.state(z)?;
    let m = prob.solver().mass();
    let misfit = u.zip_map(prob.desired(), |a, b| a - b);
    Ok(0.5 * inner_q(&misfit, &misfit, m) + 0.5 * prob.alpha() * inner_q(z, z, m))
}

/// `⟨·,·⟩_Q`-gradient `ξ + αz` of `J^γ`; slot 0 is zero.
pub fn gradient(prob: &ControlProblem, gamma: f64, z: &SpaceTimeField) -> Result<SpaceTimeField> {
    Ok(Evaluation::new(prob, gamma, z)?.gradient)
}
