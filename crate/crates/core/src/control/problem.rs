use crate::error::{Error, Result};
use crate::fem::{FracOrder, Mesh1D};
use crate::parabolic::{HeatSolver, SpaceTimeField, TimeGrid};

/// Pointwise bounds `lower <= z <= upper` defining the admissible controls.
/// A missing side is unconstrained.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ControlBox {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl ControlBox {
    pub fn unconstrained() -> Self {
        Self::default()
    }

    pub fn new(lower: Option<f64>, upper: Option<f64>) -> Result<Self> {
        if let (Some(lo), Some(hi)) = (lower, upper) {
            if !(lo < hi) {
                return Err(Error::domain(format!("control box needs lower < upper, got [{lo}, {hi}]")));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn is_unconstrained(&self) -> bool {
        self.lower.is_none() && self.upper.is_none()
    }

    pub fn project(&self, v: f64) -> f64 {
        let v = self.lower.map_or(v, |lo| v.max(lo));
        self.upper.map_or(v, |hi| v.min(hi))
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower.is_none_or(|lo| v >= lo) && self.upper.is_none_or(|hi| v <= hi)
    }

    pub fn at_lower(&self, v: f64) -> bool {
        self.lower.is_some_and(|lo| v <= lo)
    }

    pub fn at_upper(&self, v: f64) -> bool {
        self.upper.is_some_and(|hi| v >= hi)
    }
}

/// Data of the regularized problem together with the factored time stepper.
#[derive(Debug, Clone)]
pub struct ControlProblem {
    solver: HeatSolver,
    alpha: f64,
    desired: SpaceTimeField,
    upper_bound: SpaceTimeField,
    force: SpaceTimeField,
    mu_hat: SpaceTimeField,
    control_box: ControlBox,
}

impl ControlProblem {
    /// Problem with `u_d = 0`, `f = 0`, `μ̂ = 0`, no control box and the
    /// state bound `u_b = 0`.
    pub fn new(solver: HeatSolver, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
        }
        let zeros = solver.zeros();
        Ok(Self {
            alpha,
            desired: zeros.clone(),
            upper_bound: zeros.clone(),
            force: zeros.clone(),
            mu_hat: zeros,
            control_box: ControlBox::unconstrained(),
            solver,
        })
    }

    fn checked(&self, field: SpaceTimeField, what: &str) -> Result<SpaceTimeField> {
        self.solver.zeros().check_shape(&field, what)?;
        Ok(field)
    }

    pub fn with_desired(mut self, desired: SpaceTimeField) -> Result<Self> {
        self.desired = self.checked(desired, "desired state")?;
        Ok(self)
    }

    pub fn with_upper_bound(mut self, bound: SpaceTimeField) -> Result<Self> {
        self.upper_bound = self.checked(bound, "state bound")?;
        Ok(self)
    }

    pub fn with_force(mut self, force: SpaceTimeField) -> Result<Self> {
        self.force = self.checked(force, "force")?;
        Ok(self)
    }

    pub fn with_mu_hat(mut self, mu_hat: SpaceTimeField) -> Result<Self> {
        let mu_hat = self.checked(mu_hat, "multiplier shift")?;
        if mu_hat.min_value() < 0.0 {
            return Err(Error::domain("multiplier shift mu_hat must be nonnegative"));
        }
        self.mu_hat = mu_hat;
        Ok(self)
    }

    pub fn with_box(mut self, control_box: ControlBox) -> Self {
        self.control_box = control_box;
        self
    }

    pub fn solver(&self) -> &HeatSolver {
        &self.solver
    }

    pub fn order(&self) -> FracOrder {
        self.solver.order()
    }

    pub fn mesh(&self) -> &Mesh1D {
        self.solver.mesh()
    }

    pub fn grid(&self) -> &TimeGrid {
        self.solver.grid()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn desired(&self) -> &SpaceTimeField {
        &self.desired
    }

    pub fn upper_bound(&self) -> &SpaceTimeField {
        &self.upper_bound
    }

    pub fn force(&self) -> &SpaceTimeField {
        &self.force
    }

    pub fn mu_hat(&self) -> &SpaceTimeField {
        &self.mu_hat
    }

    pub fn control_box(&self) -> &ControlBox {
        &self.control_box
    }

    pub fn zeros(&self) -> SpaceTimeField {
        self.solver.zeros()
    }

    /// State `u = S(f + z)`.
    pub fn state(&self, z: &SpaceTimeField) -> Result<SpaceTimeField> {
        let mut load = self.force.clone();
        self.zeros().check_shape(z, "control")?;
        load.axpy(1.0, z);
        self.solver.forward(&load)
    }

    pub(crate) fn check_admissible(&self, z: &SpaceTimeField) -> Result<()> {
        self.zeros().check_shape(z, "control")?;
        if self.control_box.is_unconstrained() {
            return Ok(());
        }
        // slot 0 is inert
        if z.values()[z.nodes()..].iter().all(|&v| self.control_box.contains(v)) {
            Ok(())
        } else {
            Err(Error::precondition("control violates the control box"))
        }
    }

    /// Projects every slot `k >= 1` onto the box and pins slot 0 to the
    /// projection of zero.
    pub fn project(&self, z: &SpaceTimeField) -> SpaceTimeField {
        let mut out = z.map(|v| self.control_box.project(v));
        let zero = self.control_box.project(0.0);
        out.slot_mut(0).fill(zero);
        out
    }

    /// `‖μ̂‖²_Q` with lumped weights.
    pub fn mu_hat_norm_sq(&self) -> f64 {
        self.mu_hat.lumped_norm_q().powi(2)
    }
}
