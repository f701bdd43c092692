//! Checks run by the `verify` subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::RunConfig;
use crate::control::{chain_report, gamma_sweep, gradient, objective, ControlBox, ControlProblem, MyResult, SweepMode};
use crate::error::Result;
use crate::fem::{assemble_stiffness, FracOrder, Mesh1D};
use crate::parabolic::{inner_q, DiracDatum, HeatSolver, SpaceTimeField};
use crate::verify::{manufactured_profile_residual, oracle};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            passed: value <= limit,
        }
    }
}

fn random_field(solver: &HeatSolver, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> SpaceTimeField {
    let mut f = solver.zeros();
    f.values_mut().iter_mut().for_each(|v| *v = rng.gen_range(lo..hi));
    f
}

/// Largest relative gap between assembled and quadrature entries on a
/// seven-node mesh of the configured domain.
pub fn assembly_oracle(config: &RunConfig) -> Result<Vec<Check>> {
    let mesh = Mesh1D::new(config.domain.0, config.domain.1, 7)?;
    let mut orders = vec![0.25, 0.5, 0.75];
    if !orders.contains(&config.s.value()) {
        orders.push(config.s.value());
    }
    let mut out = Vec::new();
    for s in orders {
        let order = FracOrder::new(s)?;
        let a = assemble_stiffness(&mesh, order)?;
        let q = oracle::stiffness_matrix(&mesh, order)?;
        let mut worst: f64 = 0.0;
        for (i, row) in q.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                worst = worst.max((v - a.get(i, j)).abs() / a.get(i, j).abs());
            }
        }
        out.push(Check::at_most(format!("assembly oracle s={s}"), worst, 1e-8));
    }
    Ok(out)
}

/// Symmetry defect plus the sign pattern of an M-matrix with positive row sums.
pub fn stiffness_structure(config: &RunConfig) -> Result<Check> {
    let a = assemble_stiffness(&config.mesh()?, config.s)?;
    let n = a.dim();
    let mut defect: f64 = 0.0;
    let mut pattern = true;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            defect = defect.max((a.get(i, j) - a.get(j, i)).abs());
            pattern &= if i == j { a.get(i, j) > 0.0 } else { a.get(i, j) < 0.0 };
            row += a.get(i, j);
        }
        pattern &= row > 0.0;
    }
    let mut check = Check::at_most("stiffness symmetry, M-matrix", defect, 1e-14 * a.get(0, 0));
    check.passed &= pattern;
    Ok(check)
}

/// Ratio of consecutive manufactured-profile residuals; below one when the
/// residual decreases.
pub fn manufactured_profile(config: &RunConfig) -> Result<Check> {
    let r = 0.5 * (config.domain.1 - config.domain.0);
    let res = [31, 63, 127]
        .iter()
        .map(|&n| manufactured_profile_residual(&Mesh1D::new(-r, r, n)?, config.s))
        .collect::<Result<Vec<f64>>>()?;
    let worst = res.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    Ok(Check {
        name: "manufactured residual decreasing".into(),
        value: worst,
        limit: 1.0,
        passed: worst < 1.0,
    })
}

/// Central differences of `J^γ` against `⟨∇J^γ, d⟩_Q` on a coarse copy of the
/// configured problem.
pub fn gradient_fd(config: &RunConfig) -> Result<Check> {
    let mut coarse = config.clone();
    coarse.n_x = 7;
    coarse.n_t = 10;
    let prob = coarse.problem()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let gammas = [config.gamma_schedule[0], config.gamma_schedule[config.gamma_schedule.len() / 2]];
    let mut worst: f64 = 0.0;
    for gamma in gammas {
        let z = prob.project(&random_field(prob.solver(), &mut rng, -1.0, 1.0));
        let g = gradient(&prob, gamma, &z)?;
        for _ in 0..5 {
            let mut d = random_field(prob.solver(), &mut rng, -1.0, 1.0);
            d.slot_mut(0).fill(0.0);
            worst = worst.max(fd_error(&prob, gamma, &z, &g, &d)?);
        }
    }
    Ok(Check::at_most("gradient vs finite differences", worst, 1e-6))
}

/// Relative gap between a central difference quotient and the directional
/// derivative. Boxes are ignored by moving along `d` only inside them.
pub(crate) fn fd_error(
    prob: &ControlProblem,
    gamma: f64,
    z: &SpaceTimeField,
    g: &SpaceTimeField,
    d: &SpaceTimeField,
) -> Result<f64> {
    let eps = 1e-6 * (1.0 + z.max_abs());
    let free = prob.clone().with_box(ControlBox::unconstrained());
    let plus = z.zip_map(d, |a, b| a + eps * b);
    let minus = z.zip_map(d, |a, b| a - eps * b);
    let fd = (objective(&free, gamma, &plus)?.0 - objective(&free, gamma, &minus)?.0) / (2.0 * eps);
    let exact = inner_q(g, d, prob.solver().mass());
    Ok((fd - exact).abs() / fd.abs().max(exact.abs()).max(1e-12))
}

/// Transposition identity `⟨u_δ, ζ⟩_Q = w ξ_ζ(t_k, x_i)` for random test fields.
pub fn transposition(config: &RunConfig) -> Result<Check> {
    let mut coarse = config.clone();
    coarse.n_x = 15;
    coarse.n_t = 20;
    let solver = coarse.solver()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let dirac = DiracDatum {
            time_index: rng.gen_range(0..=coarse.n_t),
            node: rng.gen_range(0..coarse.n_x),
            weight: rng.gen_range(0.5..2.0),
        };
        let zeta = random_field(&solver, &mut rng, -1.0, 1.0);
        let u = solver.very_weak(&dirac)?;
        let lhs = inner_q(&u, &zeta, solver.mass());
        let rhs = dirac.weight * solver.adjoint(&zeta)?.get(dirac.time_index, dirac.node);
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-300));
    }
    Ok(Check::at_most("very-weak transposition identity", worst, 1e-10))
}

/// Most negative state for nonnegative sources, relative to `max z`.
pub fn positivity(config: &RunConfig) -> Result<Check> {
    let solver = config.solver()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(2));
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let z = random_field(&solver, &mut rng, 0.0, 1.0);
        let u = solver.forward(&z)?;
        let dip = -u.min_value() / z.max_abs();
        if dip > worst {
            worst = dip;
        }
    }
    Ok(Check::at_most("positivity of the heat solver", worst, 1e-10))
}

/// Sweep-based checks: convergence, stationarity and, when the zero control
/// is feasible, the chain inequality.
pub fn sweep_checks(config: &RunConfig) -> Result<(Vec<Check>, Vec<MyResult>)> {
    let prob = config.problem()?;
    let z0 = prob.project(&config.field(config.z)?);
    let results = gamma_sweep(&prob, &config.gamma_schedule, &z0, &config.options(), SweepMode::WarmStart)?;
    let mut checks = Vec::new();
    let unconverged = results.iter().filter(|r| !r.converged()).count();
    checks.push(Check::at_most("sweep points not converged", unconverged as f64, 0.0));
    let stationarity = results
        .iter()
        .map(|r| r.grad_norm / r.objective().max(1.0))
        .fold(0.0, f64::max);
    checks.push(Check::at_most("relative stationarity", stationarity, config.tol_opt));

    let zero = prob.zeros();
    if prob.control_box().contains(0.0) && prob.state(&zero)?.zip_map(prob.upper_bound(), |u, b| u - b).max_value() <= 0.0 {
        let mut worst: f64 = 0.0;
        for r in &results {
            let chain = chain_report(&prob, r, &zero)?;
            let most_negative = chain.slacks().iter().fold(0.0, |m: f64, s| m.max(-s));
            worst = worst.max(most_negative);
        }
        checks.push(Check::at_most("chain inequality slack", worst, 1e-8));
    }
    Ok((checks, results))
}

pub fn run_suite(config: &RunConfig) -> Result<Vec<Check>> {
    let mut checks = assembly_oracle(config)?;
    checks.push(stiffness_structure(config)?);
    checks.push(manufactured_profile(config)?);
    checks.push(gradient_fd(config)?);
    checks.push(transposition(config)?);
    checks.push(positivity(config)?);
    checks.extend(sweep_checks(config)?.0);
    Ok(checks)
}

pub fn table(checks: &[Check]) -> String {
    let mut out = format!("{:<36} {:>12} {:>10}  result\n", "check", "value", "limit");
    for c in checks {
        out.push_str(&format!(
            "{:<36} {:>12.3e} {:>10.1e}  {}\n",
            c.name,
            c.value,
            c.limit,
            if c.passed { "PASS" } else { "FAIL" }
        ));
    }
    out
}
