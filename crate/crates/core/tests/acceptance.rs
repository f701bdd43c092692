//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use fracopt::cli::RunConfig;
use fracopt::control::{
    chain_report, gamma_sweep, gradient, multiplier, objective, ControlProblem, MinimizeOptions, MyResult, SweepMode,
};
use fracopt::fem::{assemble_mass, assemble_stiffness, FracOrder, Mesh1D};
use fracopt::parabolic::{inner_q, DiracDatum, HeatSolver, SpaceTimeField, TimeGrid};
use fracopt::verify::{fit_rate, manufactured_profile_residual, oracle};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RATE_BAND: (f64, f64) = (-1.25, -0.80);
const RATE_R2: f64 = 0.97;
const CHAIN_SLACK: f64 = -1e-8;
const GRADIENT_TOL: f64 = 1e-6;
const ORACLE_TOL: f64 = 1e-8;
const TIME_ORDER_BAND: (f64, f64) = (0.9, 1.1);
const DUALITY_TOL: f64 = 1e-10;
const STATIONARITY_TOL: f64 = 1e-8;
const POSITIVITY_TOL: f64 = 1e-10;
const COMPLEMENTARITY_FACTOR: f64 = 0.05;

const PROBLEM: &str = "
domain = (-0.5, 0.5)
s = 0.8
T = 1
n_x = 127
n_t = 100
alpha = 1e-2
u_d = profile_t2:10
u_b = profile_decay4:0.1
f = zero
gamma_schedule = pow4:10
tol_opt = 1e-8
";

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn heat(n: usize, steps: usize, s: f64) -> HeatSolver {
    let mesh = Mesh1D::new(-0.5, 0.5, n).unwrap();
    let s = FracOrder::new(s).unwrap();
    HeatSolver::new(assemble_stiffness(&mesh, s).unwrap(), assemble_mass(&mesh), TimeGrid::new(1.0, steps).unwrap())
        .unwrap()
}

fn random_field(h: &HeatSolver, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> SpaceTimeField {
    let mut f = h.zeros();
    f.values_mut().iter_mut().for_each(|v| *v = rng.gen_range(lo..hi));
    f
}

fn log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn gamma_rate(results: &[MyResult]) -> Outcome {
    let gammas: Vec<f64> = results.iter().map(|r| r.gamma).collect();
    let violations: Vec<f64> = results.iter().map(|r| r.violation).collect();
    match fit_rate(&gammas, &violations) {
        Ok(fit) => outcome(
            fit.slope >= RATE_BAND.0 && fit.slope <= RATE_BAND.1 && fit.r_squared >= RATE_R2,
            format!(
                "slope {:.4} in [{}, {}], r² {:.5} >= {RATE_R2}, window {:?}",
                fit.slope, RATE_BAND.0, RATE_BAND.1, fit.r_squared, fit.window
            ),
        ),
        Err(e) => outcome(false, format!("fit failed: {e}")),
    }
}

fn chain(prob: &ControlProblem, results: &[MyResult]) -> Outcome {
    let zero = prob.zeros();
    let mut worst = f64::INFINITY;
    let mut margin = f64::INFINITY;
    for r in results {
        let report = chain_report(prob, r, &zero).unwrap();
        margin = margin.min(report.reference_margin);
        worst = report.slacks().iter().fold(worst, |m, s| m.min(*s));
    }
    outcome(
        worst >= CHAIN_SLACK && margin >= 0.0,
        format!("smallest relative slack {worst:.3e} >= {CHAIN_SLACK:e}, z_ref = 0 margin {margin:.1e}"),
    )
}

fn gradient_fd() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let h = heat(7, 10, rng.gen_range(0.1..0.95));
        let ud = random_field(&h, &mut rng, -2.0, 2.0);
        let ub = random_field(&h, &mut rng, -0.2, 0.5);
        let f = random_field(&h, &mut rng, -1.0, 1.0);
        let prob = ControlProblem::new(h, rng.gen_range(1e-3..1.0))
            .unwrap()
            .with_desired(ud)
            .unwrap()
            .with_upper_bound(ub)
            .unwrap()
            .with_force(f)
            .unwrap();
        let gamma = 10f64.powf(rng.gen_range(0.0..4.0));
        let z = random_field(prob.solver(), &mut rng, -1.0, 1.0);
        let g = gradient(&prob, gamma, &z).unwrap();
        for _ in 0..5 {
            let mut d = random_field(prob.solver(), &mut rng, -1.0, 1.0);
            d.slot_mut(0).fill(0.0);
            let eps = 1e-6;
            let jp = objective(&prob, gamma, &z.zip_map(&d, |a, b| a + eps * b)).unwrap().0;
            let jm = objective(&prob, gamma, &z.zip_map(&d, |a, b| a - eps * b)).unwrap().0;
            let fd = (jp - jm) / (2.0 * eps);
            let exact = inner_q(&g, &d, prob.solver().mass());
            worst = worst.max((fd - exact).abs() / fd.abs().max(exact.abs()));
        }
    }
    outcome(worst <= GRADIENT_TOL, format!("worst relative error {worst:.3e} <= {GRADIENT_TOL:e} (3 problems x 5 directions)"))
}

fn assembly_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    for s in [0.25, 0.5, 0.75] {
        let order = FracOrder::new(s).unwrap();
        for n in 1..=7 {
            let mesh = Mesh1D::new(-0.5, 0.5, n).unwrap();
            let a = assemble_stiffness(&mesh, order).unwrap();
            let q = oracle::stiffness_matrix(&mesh, order).unwrap();
            for (i, row) in q.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    worst = worst.max((v - a.get(i, j)).abs() / a.get(i, j).abs());
                }
            }
        }
    }
    outcome(worst <= ORACLE_TOL, format!("worst relative gap {worst:.3e} <= {ORACLE_TOL:e} (n <= 7, s in {{0.25, 0.5, 0.75}})"))
}

fn time_order() -> Outcome {
    let steps = [25usize, 50, 100, 200];
    let mut errors = Vec::new();
    for &nt in &steps {
        let h = heat(15, nt, 0.8);
        let mesh = *h.mesh();
        let shape = |x: f64| 1.0 + (3.0 * x).sin();
        let z0 = DVector::from_iterator(15, mesh.nodes().map(shape));
        let u = h.forward(&SpaceTimeField::from_fn(&mesh, h.grid(), |t, x| t * shape(x))).unwrap();
        let a: DMatrix<f64> = h.stiffness().matrix().clone();
        let m = h.mass().to_dense();
        let a_chol = a.clone().cholesky().unwrap();
        let b = m.clone().cholesky().unwrap().solve(&a);
        let binv = |v: &DVector<f64>| a_chol.solve(&(&m * v));
        let worst = (1..=nt)
            .map(|k| {
                let t = h.grid().time(k);
                let decay = b.scale(-t).exp();
                let exact = binv(&z0).scale(t) - binv(&binv(&(&z0 - decay * &z0)));
                let e = DVector::from_column_slice(u.slot(k)) - exact;
                e.dot(&(&m * &e)).sqrt()
            })
            .fold(0.0, f64::max);
        errors.push(worst);
    }
    let dts: Vec<f64> = steps.iter().map(|n| 1.0 / *n as f64).collect();
    let order = log_slope(&dts, &errors);
    outcome(
        order >= TIME_ORDER_BAND.0 && order <= TIME_ORDER_BAND.1,
        format!("observed order {order:.4} in [{}, {}] (n = 15, dt = 1/25 .. 1/200)", TIME_ORDER_BAND.0, TIME_ORDER_BAND.1),
    )
}

fn duality() -> Outcome {
    let h = heat(15, 20, 0.8);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let dirac = DiracDatum {
            time_index: rng.gen_range(0..=20),
            node: rng.gen_range(0..15),
            weight: rng.gen_range(0.5..2.0),
        };
        let zeta = random_field(&h, &mut rng, -1.0, 1.0);
        let lhs = inner_q(&h.very_weak(&dirac).unwrap(), &zeta, h.mass());
        let rhs = dirac.weight * h.adjoint(&zeta).unwrap().get(dirac.time_index, dirac.node);
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
    }
    outcome(worst <= DUALITY_TOL, format!("worst relative gap {worst:.3e} <= {DUALITY_TOL:e} (10 test fields)"))
}

fn stationarity(prob: &ControlProblem, results: &[MyResult]) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut converged = 0;
    for r in results.iter().filter(|r| r.converged()) {
        converged += 1;
        let g = gradient(prob, r.gamma, &r.control).unwrap();
        let j = objective(prob, r.gamma, &r.control).unwrap().0;
        worst = worst.max(g.norm_q(prob.solver().mass()) / j.max(1.0));
    }
    outcome(
        worst <= STATIONARITY_TOL && converged == results.len(),
        format!("max ‖ξ+αz‖/max(1,J) {worst:.3e} <= {STATIONARITY_TOL:e}, {converged}/{} converged", results.len()),
    )
}

fn positivity() -> Outcome {
    let h = heat(127, 100, 0.8);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = f64::INFINITY;
    for _ in 0..10 {
        let z = random_field(&h, &mut rng, 0.0, 1.0);
        let u = h.forward(&z).unwrap();
        worst = worst.min(u.min_value() / z.max_abs());
    }
    outcome(worst >= -POSITIVITY_TOL, format!("min u / max z = {worst:.3e} >= -{POSITIVITY_TOL:e} (10 sources)"))
}

fn complementarity(prob: &ControlProblem, results: &[MyResult]) -> Outcome {
    let at = |gamma: f64| {
        results
            .iter()
            .find(|r| r.gamma == gamma)
            .map(|r| multiplier(prob, r).complementarity.abs())
    };
    match (at(16.0), at(4f64.powi(10))) {
        (Some(early), Some(late)) => outcome(
            late <= COMPLEMENTARITY_FACTOR * early,
            format!("|<u_b - u, mu>| {late:.3e} at 4^10 <= {COMPLEMENTARITY_FACTOR} x {early:.3e} at 4^2"),
        ),
        _ => outcome(false, "sweep lacks 4^2 or 4^10".into()),
    }
}

fn manufactured() -> Outcome {
    let s = FracOrder::new(0.8).unwrap();
    let ns = [31usize, 63, 127];
    let res: Vec<f64> = ns
        .iter()
        .map(|&n| manufactured_profile_residual(&Mesh1D::new(-0.5, 0.5, n).unwrap(), s).unwrap())
        .collect();
    let hs: Vec<f64> = ns.iter().map(|n| 1.0 / (*n as f64 + 1.0)).collect();
    let order = log_slope(&hs, &res);
    let monotone = res.windows(2).all(|w| w[1] < w[0]);
    outcome(
        monotone && order > 0.0,
        format!("residuals {:.3e} > {:.3e} > {:.3e}, fitted order {order:.3} > 0", res[0], res[1], res[2]),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let config = RunConfig::parse(PROBLEM).unwrap();
    let prob = config.problem().unwrap();
    let options = MinimizeOptions {
        tol_opt: config.tol_opt,
        ..MinimizeOptions::default()
    };
    let results = gamma_sweep(&prob, &config.gamma_schedule, &prob.zeros(), &options, SweepMode::WarmStart).unwrap();

    let criteria: Vec<(&str, Outcome)> = vec![
        ("violation rate in gamma", gamma_rate(&results)),
        ("objective chain", chain(&prob, &results)),
        ("gradient vs finite differences", gradient_fd()),
        ("stiffness vs quadrature", assembly_oracle()),
        ("backward Euler order", time_order()),
        ("point-source transposition", duality()),
        ("stationarity along the sweep", stationarity(&prob, &results)),
        ("positivity", positivity()),
        ("complementarity trend", complementarity(&prob, &results)),
        ("manufactured profile", manufactured()),
    ];
    let mut failures = 0;
    for (i, (name, o)) in criteria.iter().enumerate() {
        if !o.passed {
            failures += 1;
        }
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed in {:.1} s", criteria.len() - failures, criteria.len(), start.elapsed().as_secs_f64());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
