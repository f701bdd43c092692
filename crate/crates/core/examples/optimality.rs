//! First-order diagnostics along the penalty path: stationarity, the
//! multiplier approximation and its complementarity, the objective chain
//! against a feasible reference, and the relaxed sign condition.
//!
//! cargo run --release --example optimality

use fracopt::cli::RunConfig;
use fracopt::control::{chain_report, gamma_sweep, multiplier, slater_margin, SweepMode};
use fracopt::verify::{check_distance_estimate, check_relaxed_condition};

fn main() -> fracopt::Result<()> {
    let config = RunConfig::parse(
        "domain = (-0.5, 0.5)\ns = 0.8\nn_x = 31\nT = 1\nn_t = 20\n\
         u_d = profile_t2:10\nu_b = profile_decay4:0.1\ngamma_schedule = pow4:7\n",
    )?;
    let prob = config.problem()?;
    let zero = prob.zeros();
    println!("Slater margin of z = 0: {:.3e}", slater_margin(&prob, &zero)?);

    let results = gamma_sweep(&prob, &config.gamma_schedule, &zero, &config.options(), SweepMode::WarmStart)?;
    println!("\n   gamma   |xi + alpha z|   <u_b - u, mu>   J(z)        J^g(z)      J^g(0)      chain");
    for r in &results {
        let mu = multiplier(&prob, r);
        let chain = chain_report(&prob, r, &zero)?;
        println!(
            "{:>8}   {:.3e}       {:>11.3e}   {:.8}  {:.8}  {:.8}  {}",
            r.gamma,
            r.grad_norm,
            mu.complementarity,
            chain.j_opt,
            chain.j_gamma_opt,
            chain.j_gamma_ref,
            chain.chain_holds(1e-8)
        );
    }

    // finest solution as the reference for the distance diagnostic
    let best = results.last().expect("non-empty sweep");
    println!("\n   gamma   lhs          rhs          residual");
    for d in check_distance_estimate(&prob, &results[..results.len() - 1], &best.control, &best.state)? {
        println!("{:>8}   {:.4e}   {:.4e}   {:+.3e}", d.gamma, d.lhs, d.rhs, d.residual);
    }

    let relaxed = check_relaxed_condition(&prob, &best.control, &best.state, 1e-8)?;
    println!("\nrelaxed condition: lhs = {:.4e}, holds = {}", relaxed.lhs, relaxed.holds);
    Ok(())
}
