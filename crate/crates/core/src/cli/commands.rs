use std::path::{Path, PathBuf};

use super::config::RunConfig;
use super::output::{self, field_csv, mass_csv, norms_csv, stiffness_csv};
use super::suite::{run_suite, table};
use crate::control::{gamma_sweep, multiplier, SweepMode};
use crate::error::{Error, Result};
use crate::fem::{assemble_mass, assemble_stiffness, smallest_eigenvalue};
use crate::parabolic::norms;
use crate::verify::fit_rate;

/// Process exit status of a subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    /// I/O failure while writing outputs.
    Io = 1,
    Config = 2,
    NonConvergence = 3,
    VerificationFailure = 4,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn of_error(e: &Error) -> Self {
        match e {
            Error::Io(_) => Status::Io,
            Error::EigenNoConvergence { .. } => Status::NonConvergence,
            _ => Status::Config,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Assemble,
    SolveState,
    Sweep,
    Verify,
}

/// Parses the config, applies the output override and runs `command`.
/// Diagnostics go to standard error.
pub fn run(command: Command, config_path: &Path, output_dir: Option<PathBuf>) -> Status {
    let mut config = match RunConfig::from_file(config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}: {e}", config_path.display());
            return Status::Config;
        }
    };
    if let Some(dir) = output_dir {
        config.output_dir = dir;
    }
    let result = match command {
        Command::Assemble => cmd_assemble(&config),
        Command::SolveState => cmd_solve_state(&config),
        Command::Sweep => cmd_sweep(&config),
        Command::Verify => cmd_verify(&config),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        Status::of_error(&e)
    })
}

/// Writes `stiffness.csv` and `mass.csv`; prints the smallest eigenvalue.
pub fn cmd_assemble(config: &RunConfig) -> Result<Status> {
    let mesh = config.mesh()?;
    let a = assemble_stiffness(&mesh, config.s)?;
    let m = assemble_mass(&mesh);
    output::write(&config.output_dir, "stiffness.csv", &stiffness_csv(&a))?;
    output::write(&config.output_dir, "mass.csv", &mass_csv(&m, mesh.left(), mesh.right()))?;
    match smallest_eigenvalue(&a, &m) {
        Ok(pair) => println!("smallest eigenvalue {:.10e} ({} iterations)", pair.value, pair.iterations),
        Err(e) => eprintln!("warning: {e}"),
    }
    Ok(Status::Success)
}

/// Writes the state of `f + z` to `state.csv` and its norms to `norms.csv`.
pub fn cmd_solve_state(config: &RunConfig) -> Result<Status> {
    let solver = config.solver()?;
    let load = config.field(config.f)?.zip_map(&config.field(config.z)?, |a, b| a + b);
    let u = solver.forward(&load)?;
    let report = norms(&u, solver.mass(), config.norm_p, config.norm_r)?;
    output::write(&config.output_dir, "state.csv", &field_csv(&u, config.s))?;
    output::write(&config.output_dir, "norms.csv", &norms_csv(&report))?;
    println!(
        "L∞(Q) {:.6e}  L²(Q) {:.6e}  L^{}(L^{}) {:.6e}",
        report.linf_q, report.l2_q, report.r, report.p, report.lr_lp
    );
    Ok(Status::Success)
}

/// Runs the warm-started penalty path, writing `results.csv`, the four
/// field snapshots per `γ` and `rate.csv`.
pub fn cmd_sweep(config: &RunConfig) -> Result<Status> {
    let prob = config.problem()?;
    let z0 = prob.project(&config.field(config.z)?);
    let results = gamma_sweep(&prob, &config.gamma_schedule, &z0, &config.options(), SweepMode::WarmStart)?;
    let dir = &config.output_dir;
    let mut summary = String::from("gamma,J_track,J_ctrl,J_pen,violation,grad_norm,iterations,complementarity\n");
    for r in &results {
        let mu = multiplier(&prob, r);
        summary.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e}\n",
            r.gamma, r.j_track, r.j_ctrl, r.j_pen, r.violation, r.grad_norm, r.iterations, mu.complementarity
        ));
        let g = r.gamma;
        output::write(dir, &format!("state_g{g}.csv"), &field_csv(&r.state, config.s))?;
        output::write(dir, &format!("control_g{g}.csv"), &field_csv(&r.control, config.s))?;
        output::write(dir, &format!("adjoint_g{g}.csv"), &field_csv(&r.adjoint, config.s))?;
        output::write(dir, &format!("multiplier_g{g}.csv"), &field_csv(&mu.field, config.s))?;
        println!(
            "gamma {g:>10}  J {:.8e}  violation {:.3e}  iterations {:>6}  {:?}",
            r.objective(),
            r.violation,
            r.iterations,
            r.termination
        );
    }
    output::write(dir, "results.csv", &summary)?;

    let gammas: Vec<f64> = results.iter().map(|r| r.gamma).collect();
    let violations: Vec<f64> = results.iter().map(|r| r.violation).collect();
    match fit_rate(&gammas, &violations) {
        Ok(rate) => {
            output::write(dir, "rate.csv", &rate.to_csv())?;
            println!("violation rate {:.4} (r² {:.4})", rate.slope, rate.r_squared);
        }
        Err(e) => eprintln!("rate fit skipped: {e}"),
    }

    if results.iter().all(|r| r.converged()) {
        Ok(Status::Success)
    } else {
        eprintln!("some penalty subproblems did not converge");
        Ok(Status::NonConvergence)
    }
}

/// Prints the pass/fail table of the invariant suite.
pub fn cmd_verify(config: &RunConfig) -> Result<Status> {
    let checks = run_suite(config)?;
    print!("{}", table(&checks));
    if checks.iter().all(|c| c.passed) {
        Ok(Status::Success)
    } else {
        Ok(Status::VerificationFailure)
    }
}
