use std::f64::consts::PI;

use nalgebra::DVector;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::fem::{assemble_stiffness, FracOrder, Mesh1D};

/// `ũ(x) = K_{1,s} (r² - (x - c)²)_+^s`, whose fractional Laplacian equals 1
/// on `(c - r, c + r)`, with `K_{1,s} = Γ(1/2) / (4^s Γ(s + 1/2) Γ(1 + s))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactProfile {
    pub order: FracOrder,
    pub center: f64,
    pub radius: f64,
    pub scale: f64,
}

impl ExactProfile {
    pub fn new(order: FracOrder, center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::domain(format!("profile radius must be positive, got {radius}")));
        }
        let s = order.value();
        let scale = PI.sqrt() / (4f64.powf(s) * gamma(s + 0.5) * gamma(1.0 + s));
        Ok(Self {
            order,
            center,
            radius,
            scale,
        })
    }

    /// Profile centred on the mesh interval and vanishing at its endpoints.
    pub fn for_mesh(order: FracOrder, mesh: &Mesh1D) -> Result<Self> {
        Self::new(order, 0.5 * (mesh.left() + mesh.right()), 0.5 * mesh.width())
    }

    pub fn value(&self, x: f64) -> f64 {
        let d = x - self.center;
        let base = self.radius * self.radius - d * d;
        if base > 0.0 {
            self.scale * base.powf(self.order.value())
        } else {
            0.0
        }
    }
}

/// Relative residual of the nodal interpolant ũ_h of the exact profile
/// against `F_i = ∫ φ_i = h`, the load of the constant 1, measured in the
/// dual energy norm: `‖A ũ_h - F‖_{A⁻¹} / ‖F‖_{A⁻¹}`, which equals
/// `‖ũ_h - u_h‖_A / ‖u_h‖_A` for the discrete solution `u_h`.
pub fn manufactured_profile_residual(mesh: &Mesh1D, s: FracOrder) -> Result<f64> {
    let scale = mesh.left().abs().max(mesh.right().abs());
    if (mesh.left() + mesh.right()).abs() > 1e-14 * scale {
        return Err(Error::domain("manufactured profile needs a symmetric interval (-r, r)"));
    }
    let profile = ExactProfile::new(s, 0.0, mesh.right())?;
    let a = assemble_stiffness(mesh, s)?;
    let n = mesh.len();
    let nodal = DVector::from_iterator(n, mesh.nodes().map(|x| profile.value(x)));
    let load = DVector::from_element(n, mesh.h());
    let residual = a.matrix() * &nodal - &load;
    let chol = a
        .matrix()
        .clone()
        .cholesky()
        .ok_or_else(|| Error::precondition("stiffness matrix is not positive definite"))?;
    let num = residual.dot(&chol.solve(&residual));
    let den = load.dot(&chol.solve(&load));
    Ok((num / den).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_scale_is_one() {
        let p = ExactProfile::new(FracOrder::new(0.5).unwrap(), 0.0, 0.5).unwrap();
        assert!((p.scale - 1.0).abs() < 1e-14);
        assert_eq!(p.value(0.5), 0.0);
        assert_eq!(p.value(-0.7), 0.0);
        assert!((p.value(0.0) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_domain_rejected() {
        let mesh = Mesh1D::new(0.0, 1.0, 7).unwrap();
        assert!(manufactured_profile_residual(&mesh, FracOrder::new(0.5).unwrap()).is_err());
    }

    #[test]
    fn residual_decays_like_root_h() {
        let s = FracOrder::new(0.8).unwrap();
        let res: Vec<f64> = [31, 63, 127]
            .iter()
            .map(|&n| manufactured_profile_residual(&Mesh1D::new(-0.5, 0.5, n).unwrap(), s).unwrap())
            .collect();
        for w in res.windows(2) {
            let rate = (w[0] / w[1]).log2();
            assert!(rate > 0.45 && rate < 0.55, "rate {rate}");
        }
    }

    #[test]
    fn interpolant_residual_is_even() {
        let mesh = Mesh1D::new(-0.5, 0.5, 31).unwrap();
        let s = FracOrder::new(0.3).unwrap();
        let p = ExactProfile::for_mesh(s, &mesh).unwrap();
        let nodal: Vec<f64> = mesh.nodes().map(|x| p.value(x)).collect();
        let au = assemble_stiffness(&mesh, s).unwrap().apply(&nodal);
        for i in 0..mesh.len() {
            assert_eq!(nodal[i], nodal[mesh.len() - 1 - i]);
            assert!((au[i] - au[mesh.len() - 1 - i]).abs() < 1e-12);
        }
    }
}
