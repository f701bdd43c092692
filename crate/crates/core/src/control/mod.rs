//! Moreau-Yosida regularized optimal control of the fractional heat equation.
//!
//! For a penalty parameter `γ > 0` the reduced objective is
//!
//! ```text
//! J^γ(z) = ½‖u - u_d‖²_Q + (α/2)‖z‖²_Q + (1/2γ)‖(μ̂ + γ(u - u_b))_+‖²_Q,   u = S(f + z)
//! ```
//!
//! The two quadratic terms use the consistent mass matrix, the penalty uses
//! lumped (nodal) weights so that `J^γ` stays continuously differentiable.
//! Its `⟨·,·⟩_Q`-gradient is `ξ + αz`, where `ξ` is the discrete adjoint for
//! the load `(u - u_d) + (μ̂ + γ(u - u_b))_+`.

mod diagnostics;
mod minimize;
mod objective;
mod problem;
mod sweep;

pub use diagnostics::{
    chain_report, multiplier, slater_margin, ChainReport, MultiplierApprox,
};
pub use minimize::{minimize, MinimizeOptions, MyResult, Termination};
pub use objective::{gradient, objective, unregularized_objective, ObjectiveParts};
pub use problem::{ControlBox, ControlProblem};
pub use sweep::{gamma_sweep, pow4_schedule, SweepMode};

