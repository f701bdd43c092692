//! Stiffness matrix of the integral fractional Laplacian for P1 elements.
//!
//! A hat function of an interior node, extended by zero outside `(a, b)`, is
//! also a hat function of the infinite uniform grid `a + k h`, `k ∈ ℤ`. The
//! Gagliardo form is translation invariant on `ℝ × ℝ`, so
//! `E(φ_i, φ_j)` depends only on `|i - j|` and the matrix is Toeplitz. The
//! exterior tail `2 ∫_Ω φ_i φ_j ∫_{ℝ∖Ω} |x - y|^{-1-2s} dy dx` is contained in
//! that full-line integral, so no exterior mesh is needed.
//!
//! Writing a hat as the second difference of a ramp, the entry for offset
//! `m` is a fourth central difference of `G(d) ∝ |d|^{3-2s}`, the
//! fundamental solution of `|ξ|^{2s-4}`:
//!
//! ```text
//! A_m = C_{1,s} h^{1-2s} / (2s (2-2s) (3-2s)) · Σ_{k=-2}^{2} w_k G(m + k)
//! G(d) = (|d|^{3-2s} - d²) / (1 - 2s),      w = (1, -4, 6, -4, 1)
//! ```
//!
//! The `-d²` term is annihilated by the fourth difference; it keeps `G`
//! continuous through `s = 1/2`, where `G(d) = d² ln|d|`.

use nalgebra::DMatrix;

use super::{normalization_constant, FracOrder, Mesh1D};
use crate::error::Result;

const HALF_ORDER_BRANCH: f64 = 1e-9;

/// Dense symmetric positive definite matrix `A_ij = E(φ_i, φ_j)`.
#[derive(Debug, Clone)]
pub struct StiffnessMatrix {
    mesh: Mesh1D,
    order: FracOrder,
    entries: DMatrix<f64>,
}

impl StiffnessMatrix {
    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn order(&self) -> FracOrder {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[(i, j)] * v[j]).sum())
            .collect()
    }
}

/// Interaction potential `G(d)` for the fourth difference.
fn potential(d: f64, s: f64) -> f64 {
    let d = d.abs();
    if d == 0.0 {
        return 0.0;
    }
    let eps = 1.0 - 2.0 * s;
    let log_d = d.ln();
    if eps.abs() < 2.0 * HALF_ORDER_BRANCH {
        d * d * log_d
    } else {
        // d² (d^ε - 1) / ε without cancellation near ε = 0
        d * d * (eps * log_d).exp_m1() / eps
    }
}

/// Stiffness entry for index offset `m = |i - j|` on a grid of unit spacing,
/// before the `h^{1-2s}` scaling.
fn unit_entry(m: usize, s: f64, c: f64) -> f64 {
    const W: [f64; 5] = [1.0, -4.0, 6.0, -4.0, 1.0];
    let m = m as f64;
    let diff: f64 = W
        .iter()
        .enumerate()
        .map(|(k, w)| w * potential(m + k as f64 - 2.0, s))
        .sum();
    c / (2.0 * s * (2.0 - 2.0 * s) * (3.0 - 2.0 * s)) * diff
}

/// Assembles `A` for the hat basis of `mesh` with zero exterior extension.
pub fn assemble_stiffness(mesh: &Mesh1D, s: FracOrder) -> Result<StiffnessMatrix> {
    let n = mesh.len();
    let sv = s.value();
    let c = normalization_constant(1, s)?.value;
    let scale = mesh.h().powf(1.0 - 2.0 * sv);
    let band: Vec<f64> = (0..n).map(|m| scale * unit_entry(m, sv, c)).collect();
    let entries = DMatrix::from_fn(n, n, |i, j| band[i.abs_diff(j)]);
    Ok(StiffnessMatrix {
        mesh: *mesh,
        order: s,
        entries,
    })
}
