//! The profile (r² - x²)_+^s scaled to have unit fractional Laplacian:
//! pointwise check by quadrature and the discrete residual under refinement.
//!
//! cargo run --release --example exact_profile

use fracopt::fem::{FracOrder, Mesh1D};
use fracopt::verify::{manufactured_profile_residual, oracle, ExactProfile};

fn main() -> fracopt::Result<()> {
    for s in [0.3, 0.5, 0.8] {
        let order = FracOrder::new(s)?;
        let p = ExactProfile::new(order, 0.0, 0.5)?;
        print!("s = {s}: K = {:.12}, (-Δ)^s u at", p.scale);
        for x in [-0.3, 0.0, 0.1, 0.4] {
            let w: f64 = 0.25 - x * x;
            let u2 = p.scale * (4.0 * s * (s - 1.0) * x * x * w.powf(s - 2.0) - 2.0 * s * w.powf(s - 1.0));
            let kinks = [0.5 - f64::abs(x), 0.5 + f64::abs(x)];
            let v = oracle::fractional_laplacian_at(|y| p.value(y), x, u2, order, &kinks, kinks[1])?;
            print!("  {x}: {v:.8}");
        }
        println!();
    }

    println!("\n   n   residual (s = 0.8)");
    let s = FracOrder::new(0.8)?;
    for n in [31, 63, 127, 255, 511] {
        println!("{n:>4}   {:.6e}", manufactured_profile_residual(&Mesh1D::new(-0.5, 0.5, n)?, s)?);
    }
    Ok(())
}
