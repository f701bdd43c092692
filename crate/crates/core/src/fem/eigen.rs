use nalgebra::DVector;

use super::{MassMatrix, StiffnessMatrix};
use crate::error::{Error, Result};

pub const EIGEN_TOLERANCE: f64 = 1e-10;
pub const EIGEN_MAX_ITERATIONS: usize = 10_000;

/// Smallest eigenpair of the pencil `A v = λ M v`, with `vᵀ M v = 1`.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
}

/// Inverse iteration on `A⁻¹ M` with a Rayleigh-quotient estimate.
pub fn smallest_eigenvalue(a: &StiffnessMatrix, m: &MassMatrix) -> Result<Eigenpair> {
    let n = a.dim();
    if m.dim() != n {
        return Err(Error::dimension(format!("stiffness is {n}x{n}, mass is {0}x{0}", m.dim())));
    }
    let chol = a
        .matrix()
        .clone()
        .cholesky()
        .ok_or_else(|| Error::domain("stiffness matrix is not positive definite"))?;

    // positive start vector: the ground state of a positivity-preserving pencil has one sign
    let mut v = DVector::from_element(n, 1.0);
    normalize(&mut v, m);
    let mut lambda = rayleigh(a, &v);
    for it in 1..=EIGEN_MAX_ITERATIONS {
        let mut w = chol.solve(&DVector::from_vec(m.apply(v.as_slice())));
        normalize(&mut w, m);
        let next = rayleigh(a, &w);
        v = w;
        let converged = (next - lambda).abs() <= EIGEN_TOLERANCE * next.abs();
        lambda = next;
        if converged {
            return Ok(Eigenpair {
                value: lambda,
                vector: v.as_slice().to_vec(),
                iterations: it,
            });
        }
    }
    Err(Error::EigenNoConvergence {
        iterations: EIGEN_MAX_ITERATIONS,
        estimate: lambda,
        vector: v.as_slice().to_vec(),
    })
}

fn normalize(v: &mut DVector<f64>, m: &MassMatrix) {
    let norm = m.inner(v.as_slice(), v.as_slice()).sqrt();
    *v /= norm;
}

/// `vᵀ A v` for `M`-normalized `v`.
fn rayleigh(a: &StiffnessMatrix, v: &DVector<f64>) -> f64 {
    v.dot(&(a.matrix() * v))
}
