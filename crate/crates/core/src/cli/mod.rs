//! Line-oriented configuration, the four subcommands and their CSV outputs.
//! This is the only module that touches the filesystem.

mod commands;
mod config;
mod output;
pub mod suite;

pub use commands::{cmd_assemble, cmd_solve_state, cmd_sweep, cmd_verify, run, Command, Status};
pub use config::{FieldSpec, RunConfig};
pub use output::{field_csv, mass_csv, norms_csv, stiffness_csv};
