//! Optimal control of the fractional heat equation under pointwise state
//! constraints, solved by Moreau-Yosida penalization.
//!
//! The crate is organised bottom-up:
//!
//! * [`fem`] builds the discrete spatial operators on a 1D interval: the dense
//!   stiffness matrix of the integral fractional Laplacian with zero exterior
//!   data, the P1 mass matrix and the smallest generalized eigenvalue.
//! * [`parabolic`] advances the state forward and the adjoint backward in time
//!   with backward Euler, computes very-weak (transposition) solutions for
//!   Dirac data and evaluates space-time norms.
//! * [`control`] holds the regularized control problem: objective, adjoint
//!   gradient, projected L-BFGS minimization, the penalty path in `gamma`
//!   and multiplier diagnostics.
//! * [`verify`] fits violation decay rates and evaluates the diagnostic
//!   inequalities, the manufactured profile and the quadrature oracle.
//! * [`cli`] parses run configurations and drives the `assemble`,
//!   `solve-state`, `sweep` and `verify` commands.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod control;
pub mod error;
pub mod fem;
pub mod parabolic;
pub mod verify;

pub use error::{Error, Result};
