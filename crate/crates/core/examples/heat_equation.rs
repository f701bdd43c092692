//! Backward Euler for the fractional heat equation: first-order convergence
//! in time, the adjoint as the exact transpose, and mixed space-time norms.
//!
//! cargo run --release --example heat_equation

use fracopt::fem::{assemble_mass, assemble_stiffness, FracOrder, Mesh1D};
use fracopt::parabolic::{inner_q, norms, HeatSolver, SpaceTimeField, TimeGrid};

fn solver(mesh: &Mesh1D, s: FracOrder, steps: usize) -> fracopt::Result<HeatSolver> {
    HeatSolver::new(assemble_stiffness(mesh, s)?, assemble_mass(mesh), TimeGrid::new(1.0, steps)?)
}

fn main() -> fracopt::Result<()> {
    let s = FracOrder::new(0.5)?;
    let mesh = Mesh1D::new(-1.0, 1.0, 31)?;
    let source = |t: f64, x: f64| (1.0 - x * x) * (3.0 * t).cos();

    // fine-step solution as reference at t = 1
    let reference = {
        let fine = solver(&mesh, s, 6400)?;
        let u = fine.forward(&SpaceTimeField::from_fn(&mesh, fine.grid(), source))?;
        u.slot(6400).to_vec()
    };
    println!("  steps   |u(1) - u_ref(1)|   ratio");
    let mut previous: Option<f64> = None;
    for steps in [25, 50, 100, 200] {
        let heat = solver(&mesh, s, steps)?;
        let u = heat.forward(&SpaceTimeField::from_fn(&mesh, heat.grid(), source))?;
        let err = u.slot(steps).iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let ratio = previous.map_or(String::new(), |p| format!("{:.3}", p / err));
        println!("{steps:>7}   {err:>17.6e}   {ratio}");
        previous = Some(err);
    }

    let heat = solver(&mesh, s, 50)?;
    let z = SpaceTimeField::from_fn(&mesh, heat.grid(), source);
    let w = SpaceTimeField::from_fn(&mesh, heat.grid(), |t, x| (1.0 + x) * t);
    let lhs = inner_q(&heat.forward(&z)?, &w, heat.mass());
    let rhs = inner_q(&z, &heat.adjoint(&w)?, heat.mass());
    println!("\n<S z, w> = {lhs:.15e}\n<z, S*w> = {rhs:.15e}");

    let report = norms(&heat.forward(&z)?, heat.mass(), 2.0, f64::INFINITY)?;
    println!("\nL∞(Q) {:.6e}  L²(Q) {:.6e}  L∞(L²) {:.6e}", report.linf_q, report.l2_q, report.lr_lp);
    Ok(())
}
