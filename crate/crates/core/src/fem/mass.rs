use nalgebra::DMatrix;

use super::Mesh1D;

/// Tridiagonal P1 mass matrix on the interior nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassMatrix {
    n: usize,
    h: f64,
}

impl MassMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn diagonal(&self) -> f64 {
        2.0 * self.h / 3.0
    }

    pub fn off_diagonal(&self) -> f64 {
        self.h / 6.0
    }

    /// Row sums of the lumped matrix: `∫ φ_i = h` for every interior hat.
    pub fn lumped(&self) -> f64 {
        self.h
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diagonal(),
            1 => self.off_diagonal(),
            _ => 0.0,
        }
    }

    pub fn apply_into(&self, v: &[f64], out: &mut [f64]) {
        let n = self.n;
        assert!(v.len() == n && out.len() == n);
        let (d, o) = (self.diagonal(), self.off_diagonal());
        for i in 0..n {
            let mut acc = d * v[i];
            if i > 0 {
                acc += o * v[i - 1];
            }
            if i + 1 < n {
                acc += o * v[i + 1];
            }
            out[i] = acc;
        }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.apply_into(v, &mut out);
        out
    }

    /// `uᵀ M v`.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.n;
        let (d, o) = (self.diagonal(), self.off_diagonal());
        let mut acc = 0.0;
        for i in 0..n {
            acc += d * u[i] * v[i];
            if i + 1 < n {
                acc += o * (u[i] * v[i + 1] + u[i + 1] * v[i]);
            }
        }
        acc
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }
}

pub fn assemble_mass(mesh: &Mesh1D) -> MassMatrix {
    MassMatrix {
        n: mesh.len(),
        h: mesh.h(),
    }
}
