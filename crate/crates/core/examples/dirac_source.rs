//! Very-weak solution for a point source, checked by transposition and
//! compared with narrowing smooth approximations of the same source.
//!
//! cargo run --release --example dirac_source

use fracopt::fem::{assemble_mass, assemble_stiffness, FracOrder, Mesh1D};
use fracopt::parabolic::{inner_q, DiracDatum, HeatSolver, SpaceTimeField, TimeGrid};

fn main() -> fracopt::Result<()> {
    let mesh = Mesh1D::new(-0.5, 0.5, 63)?;
    let s = FracOrder::new(0.6)?;
    let heat = HeatSolver::new(assemble_stiffness(&mesh, s)?, assemble_mass(&mesh), TimeGrid::new(1.0, 40)?)?;
    let dirac = DiracDatum {
        time_index: 10,
        node: 31,
        weight: 1.0,
    };
    let u = heat.very_weak(&dirac)?;

    let zeta = SpaceTimeField::from_fn(&mesh, heat.grid(), |t, x| (1.0 + t) * (4.0 * x).cos());
    let lhs = inner_q(&u, &zeta, heat.mass());
    let rhs = dirac.weight * heat.adjoint(&zeta)?.get(dirac.time_index, dirac.node);
    println!("<u, zeta> = {lhs:.15e}\nxi(t, x)  = {rhs:.15e}");

    // unit mass at x = 0 spread over width eps, acting on the same step
    let dt = heat.grid().dt();
    println!("\n  width   ||u_eps - u||_Q / ||u||_Q");
    for width in [0.2, 0.1, 0.05, 0.025] {
        let pulse = SpaceTimeField::from_fn(&mesh, heat.grid(), |t, x| {
            let active = (t - heat.grid().time(dirac.time_index)).abs() < 1e-12;
            if active && x.abs() < width {
                (1.0 - x.abs() / width) / (width * dt)
            } else {
                0.0
            }
        });
        let smooth = heat.forward(&pulse)?;
        let diff = smooth.zip_map(&u, |a, b| a - b);
        println!("{width:>7}   {:.4e}", diff.norm_q(heat.mass()) / u.norm_q(heat.mass()));
    }
    Ok(())
}
