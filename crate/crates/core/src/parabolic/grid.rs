use crate::error::{Error, Result};

/// Uniform time grid on `[0, T]` with `steps` backward Euler steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    horizon: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(horizon: f64, steps: usize) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::domain(format!("horizon must be positive, got {horizon}")));
        }
        if steps == 0 {
            return Err(Error::domain("time grid needs at least one step"));
        }
        Ok(Self { horizon, steps })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt()
    }

    /// Trapezoid weight of slot `k`.
    pub fn trapezoid_weight(&self, k: usize) -> f64 {
        if k == 0 || k == self.steps {
            0.5 * self.dt()
        } else {
            self.dt()
        }
    }
}
