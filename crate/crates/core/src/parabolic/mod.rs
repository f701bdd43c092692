//! Backward Euler time stepping for the fractional heat equation.
//!
//! Conventions shared by every solver in this module:
//!
//! * a field has `n_t + 1` time slots; slot `k` of a state is its value at
//!   `t_k = k·dt`, and states start from zero at slot 0;
//! * slot `k ≥ 1` of a load (force, control, adjoint right-hand side) acts on
//!   the step `(t_{k-1}, t_k]`; slot 0 of a load is never read;
//! * the space-time inner product is `⟨u, v⟩_Q = dt Σ_{k=1}^{n_t} u_kᵀ M v_k`,
//!   the rectangle rule matching backward Euler's implicit load. With it the
//!   adjoint solver is the exact transpose of the forward solver.

mod field;
mod grid;
mod norms;
mod solver;

pub use field::{inner_q, lumped_inner_q, SpaceTimeField};
pub use grid::TimeGrid;
pub use norms::{linf_ratio_check, norms, NormReport};
pub use solver::{
    reverse_loads, solve_adjoint, solve_forward, very_weak_solve, DiracDatum,
    HeatSolver,
};
