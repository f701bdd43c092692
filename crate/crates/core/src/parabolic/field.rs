use crate::error::{Error, Result};
use crate::fem::{MassMatrix, Mesh1D};

use super::TimeGrid;

/// Nodal values on the tensor grid (time slots × interior nodes), row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    mesh: Mesh1D,
    grid: TimeGrid,
    values: Vec<f64>,
}

impl SpaceTimeField {
    pub fn zeros(mesh: &Mesh1D, grid: &TimeGrid) -> Self {
        Self {
            mesh: *mesh,
            grid: *grid,
            values: vec![0.0; (grid.steps() + 1) * mesh.len()],
        }
    }

    /// Samples `f(t_k, x_i)` at every slot and interior node.
    pub fn from_fn(mesh: &Mesh1D, grid: &TimeGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut field = Self::zeros(mesh, grid);
        for k in 0..=grid.steps() {
            let t = grid.time(k);
            for (i, x) in mesh.nodes().enumerate() {
                field.values[k * mesh.len() + i] = f(t, x);
            }
        }
        field
    }

    pub fn from_values(mesh: &Mesh1D, grid: &TimeGrid, values: Vec<f64>) -> Result<Self> {
        let expected = (grid.steps() + 1) * mesh.len();
        if values.len() != expected {
            return Err(Error::dimension(format!(
                "field needs {expected} values, got {}",
                values.len()
            )));
        }
        Ok(Self {
            mesh: *mesh,
            grid: *grid,
            values,
        })
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn nodes(&self) -> usize {
        self.mesh.len()
    }

    pub fn slots(&self) -> usize {
        self.grid.steps() + 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn slot(&self, k: usize) -> &[f64] {
        let n = self.nodes();
        &self.values[k * n..(k + 1) * n]
    }

    pub fn slot_mut(&mut self, k: usize) -> &mut [f64] {
        let n = self.nodes();
        &mut self.values[k * n..(k + 1) * n]
    }

    pub fn get(&self, k: usize, i: usize) -> f64 {
        self.values[k * self.nodes() + i]
    }

    pub fn set(&mut self, k: usize, i: usize, v: f64) {
        let n = self.nodes();
        self.values[k * n + i] = v;
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.nodes() == other.nodes() && self.slots() == other.slots()
    }

    pub(crate) fn check_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::dimension(format!(
                "{what}: {}x{} field against {}x{}",
                other.slots(),
                other.nodes(),
                self.slots(),
                self.nodes()
            )))
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            mesh: self.mesh,
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert!(self.same_shape(other));
        Self {
            mesh: self.mesh,
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: f64, other: &Self) {
        assert!(self.same_shape(other));
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `(v)_+` applied nodally.
    pub fn positive_part(&self) -> Self {
        self.map(|v| v.max(0.0))
    }

    /// Reverses the time slots `k -> n_t - k`.
    pub fn time_reversed(&self) -> Self {
        let mut out = Self::zeros(&self.mesh, &self.grid);
        let last = self.grid.steps();
        for k in 0..=last {
            out.slot_mut(k).copy_from_slice(self.slot(last - k));
        }
        out
    }

    /// `⟨self, self⟩_Q` under the consistent mass matrix.
    pub fn norm_q(&self, m: &MassMatrix) -> f64 {
        inner_q(self, self, m).sqrt()
    }

    /// `dt · h · Σ_{k≥1} Σ_i v_{k,i}²`, the lumped-mass space-time norm.
    pub fn lumped_norm_q(&self) -> f64 {
        lumped_inner_q(self, self).sqrt()
    }
}

/// `⟨u, v⟩_Q = dt Σ_{k=1}^{n_t} u_kᵀ M v_k`.
pub fn inner_q(u: &SpaceTimeField, v: &SpaceTimeField, m: &MassMatrix) -> f64 {
    assert!(u.same_shape(v));
    let dt = u.grid().dt();
    (1..u.slots()).map(|k| m.inner(u.slot(k), v.slot(k))).sum::<f64>() * dt
}

/// Lumped-mass counterpart of [`inner_q`]; used wherever a nodal
/// nonlinearity such as `(·)_+` is integrated.
pub fn lumped_inner_q(u: &SpaceTimeField, v: &SpaceTimeField) -> f64 {
    assert!(u.same_shape(v));
    let n = u.nodes();
    let w = u.grid().dt() * u.mesh().h();
    u.values[n..]
        .iter()
        .zip(&v.values[n..])
        .map(|(a, b)| a * b)
        .sum::<f64>()
        * w
}
