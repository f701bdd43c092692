//! Quantitative checks on top of the solver: decay-rate fitting along the
//! penalty path, distance and relaxed-condition diagnostics, the
//! manufactured fractional torsion profile and an adaptive quadrature oracle
//! for stiffness entries.

mod distance;
pub mod oracle;
mod profile;
mod rate;
mod relaxed;

pub use distance::{check_distance_estimate, DistanceCheck};
pub use profile::{manufactured_profile_residual, ExactProfile};
pub use rate::{fit_rate, RateReport};
pub use relaxed::{check_relaxed_condition, RelaxedCondition};
