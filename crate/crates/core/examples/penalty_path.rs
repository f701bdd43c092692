//! Follows the penalty path for a state-constrained control problem and fits
//! the decay rate of the constraint violation.
//!
//! cargo run --release --example penalty_path [config]
//!
//! Without an argument the bundled quick configuration is used.

use std::path::PathBuf;

use fracopt::cli::RunConfig;
use fracopt::control::{gamma_sweep, SweepMode};
use fracopt::verify::fit_rate;

fn main() -> fracopt::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/quick.conf")));
    let config = RunConfig::from_file(&path)?;
    let prob = config.problem()?;
    let results = gamma_sweep(&prob, &config.gamma_schedule, &prob.zeros(), &config.options(), SweepMode::WarmStart)?;

    println!("      gamma   J^gamma          violation   iterations");
    for r in &results {
        println!("{:>11}   {:.10}   {:.4e}   {:>6}", r.gamma, r.objective(), r.violation, r.iterations);
    }
    let gammas: Vec<f64> = results.iter().map(|r| r.gamma).collect();
    let violations: Vec<f64> = results.iter().map(|r| r.violation).collect();
    let rate = fit_rate(&gammas, &violations)?;
    println!("\nslope {:.4}, r² {:.5}, points {:?}", rate.slope, rate.r_squared, rate.window);
    Ok(())
}
