//! Assembles the fractional stiffness matrix, compares a row with the
//! quadrature reference and computes the smallest generalized eigenvalue.
//!
//! cargo run --release --example stiffness

use fracopt::fem::{assemble_mass, assemble_stiffness, normalization_constant, smallest_eigenvalue, FracOrder, Mesh1D};
use fracopt::verify::oracle;

fn main() -> fracopt::Result<()> {
    let s = FracOrder::new(0.75)?;
    println!("C(1, 0.75) = {:.16}", normalization_constant(1, s)?.value);

    let mesh = Mesh1D::new(-0.5, 0.5, 7)?;
    let a = assemble_stiffness(&mesh, s)?;
    println!("\n j   closed form              quadrature");
    for j in 0..mesh.len() {
        let q = oracle::stiffness_entry(&mesh, s, 0, j)?;
        println!("{j:>2}   {:>22.15e}   {:>22.15e}", a.get(0, j), q);
    }

    println!("\n   n   lambda_1");
    for n in [15, 31, 63, 127, 255] {
        let mesh = Mesh1D::new(-0.5, 0.5, n)?;
        let pair = smallest_eigenvalue(&assemble_stiffness(&mesh, s)?, &assemble_mass(&mesh))?;
        println!("{n:>4}   {:.8}", pair.value);
    }
    Ok(())
}
