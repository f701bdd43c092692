use nalgebra::{Cholesky, DMatrix, DVectorViewMut, Dyn};

use super::{SpaceTimeField, TimeGrid};
use crate::error::{Error, Result};
use crate::fem::{FracOrder, MassMatrix, Mesh1D, StiffnessMatrix};

/// Backward Euler propagator with a reusable Cholesky factor of `M + dt·A`.
///
/// Forward step: `(M + dt A) u_k = M u_{k-1} + dt M z_k`, `u_0 = 0`.
///
/// Adjoint step, the exact transpose: `(M + dt A) ξ_k = M ξ_{k+1} + dt M w_k`
/// for `k = n_t, ..., 1` with `ξ_{n_t+1} = 0`. Slot 0 of an adjoint field holds
/// one more homogeneous step, `(M + dt A) ξ_0 = M ξ_1`; it carries no weight in
/// `⟨·,·⟩_Q` and only matters for point evaluations at `t = 0`.
#[derive(Debug, Clone)]
pub struct HeatSolver {
    stiffness: StiffnessMatrix,
    mass: MassMatrix,
    grid: TimeGrid,
    factor: Cholesky<f64, Dyn>,
}

/// Point mass `weight · δ(t_k, x_i)` on the space-time grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracDatum {
    /// Time slot, `0..=n_t`.
    pub time_index: usize,
    /// Interior node, 0-based.
    pub node: usize,
    pub weight: f64,
}

impl HeatSolver {
    pub fn new(stiffness: StiffnessMatrix, mass: MassMatrix, grid: TimeGrid) -> Result<Self> {
        let n = stiffness.dim();
        if mass.dim() != n {
            return Err(Error::dimension(format!(
                "stiffness is {n}x{n}, mass is {0}x{0}",
                mass.dim()
            )));
        }
        let lhs: DMatrix<f64> = mass.to_dense() + stiffness.matrix() * grid.dt();
        let factor = lhs
            .cholesky()
            .expect("M + dt A is symmetric positive definite for dt > 0");
        Ok(Self {
            stiffness,
            mass,
            grid,
            factor,
        })
    }

    pub fn mesh(&self) -> &Mesh1D {
        self.stiffness.mesh()
    }

    pub fn order(&self) -> FracOrder {
        self.stiffness.order()
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn stiffness(&self) -> &StiffnessMatrix {
        &self.stiffness
    }

    pub fn mass(&self) -> &MassMatrix {
        &self.mass
    }

    pub fn zeros(&self) -> SpaceTimeField {
        SpaceTimeField::zeros(self.mesh(), &self.grid)
    }

    fn check(&self, field: &SpaceTimeField, what: &str) -> Result<()> {
        self.zeros().check_shape(field, what)
    }

    fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        self.factor.solve_mut(&mut DVectorViewMut::from_slice(rhs, n));
    }

    /// Marches `(M + dt A) y_k = M y_{k-1} + d_k` from slot `start + 1` to `n_t`.
    /// `dual_load(k, out)` writes `d_k`; slots up to `start` are left untouched.
    fn march(
        &self,
        out: &mut SpaceTimeField,
        start: usize,
        mut dual_load: impl FnMut(usize, &mut [f64]),
    ) {
        let n = out.nodes();
        let mut load = vec![0.0; n];
        for k in start + 1..=self.grid.steps() {
            dual_load(k, &mut load);
            let (done, rest) = out.values_mut().split_at_mut(k * n);
            let prev = &done[(k - 1) * n..];
            let next = &mut rest[..n];
            self.mass.apply_into(prev, next);
            for (y, d) in next.iter_mut().zip(&load) {
                *y += d;
            }
            self.solve_in_place(next);
        }
    }

    /// Forward state for the load `z` (slot 0 of `z` is ignored).
    pub fn forward(&self, z: &SpaceTimeField) -> Result<SpaceTimeField> {
        self.check(z, "forward load")?;
        let dt = self.grid.dt();
        let mut u = self.zeros();
        self.march(&mut u, 0, |k, out| {
            self.mass.apply_into(z.slot(k), out);
            out.iter_mut().for_each(|v| *v *= dt);
        });
        Ok(u)
    }

    /// Adjoint for already-assembled dual loads `r_k` (slot 0 ignored):
    /// `(M + dt A) ξ_k = M ξ_{k+1} + r_k`.
    pub fn adjoint_dual(&self, dual: &SpaceTimeField) -> Result<SpaceTimeField> {
        self.check(dual, "adjoint load")?;
        let reversed = reverse_loads(dual);
        let mut y = self.zeros();
        self.march(&mut y, 0, |k, out| out.copy_from_slice(reversed.slot(k)));
        Ok(self.finish_adjoint(reverse_loads(&y)))
    }

    fn finish_adjoint(&self, mut xi: SpaceTimeField) -> SpaceTimeField {
        let n = xi.nodes();
        let (first, rest) = xi.values_mut().split_at_mut(n);
        self.mass.apply_into(&rest[..n], first);
        self.solve_in_place(first);
        xi
    }

    /// Adjoint with terminal value zero for the right-hand side `w`,
    /// computed by reversing `w` in time, solving forward and reversing back.
    pub fn adjoint(&self, w: &SpaceTimeField) -> Result<SpaceTimeField> {
        self.check(w, "adjoint right-hand side")?;
        let forward = self.forward(&reverse_loads(w))?;
        Ok(self.finish_adjoint(reverse_loads(&forward)))
    }

    /// Very-weak solution for a Dirac datum, defined by transposition:
    /// `⟨u, ζ⟩_Q = weight · ξ_ζ(t_k, x_i)` for every field `ζ`, where `ξ_ζ` is
    /// the adjoint of `ζ`. The evaluation functional becomes a unit load at
    /// node `i` in slot `k`, propagated by the homogeneous forward scheme.
    pub fn very_weak(&self, dirac: &DiracDatum) -> Result<SpaceTimeField> {
        if dirac.time_index > self.grid.steps() || dirac.node >= self.mesh().len() {
            return Err(Error::domain(format!(
                "Dirac at slot {} node {} outside {}x{} grid",
                dirac.time_index,
                dirac.node,
                self.grid.steps() + 1,
                self.mesh().len()
            )));
        }
        let mut u = self.zeros();
        {
            let slot = u.slot_mut(dirac.time_index);
            slot[dirac.node] = dirac.weight;
            self.solve_in_place(slot);
        }
        self.march(&mut u, dirac.time_index, |_, out| out.fill(0.0));
        Ok(u)
    }
}

/// Maps load slot `k ≥ 1` to `n_t + 1 - k` and zeroes slot 0.
///
/// A load in slot `k` acts on `(t_{k-1}, t_k]`; under `t -> T - t` that step
/// becomes `(t_{n_t-k}, t_{n_t+1-k}]`. The map is an involution on fields
/// whose slot 0 is zero.
pub fn reverse_loads(field: &SpaceTimeField) -> SpaceTimeField {
    let steps = field.grid().steps();
    let mut out = SpaceTimeField::zeros(field.mesh(), field.grid());
    for k in 1..=steps {
        out.slot_mut(k).copy_from_slice(field.slot(steps + 1 - k));
    }
    out
}

pub fn solve_forward(
    a: &StiffnessMatrix,
    m: &MassMatrix,
    z: &SpaceTimeField,
    grid: &TimeGrid,
) -> Result<SpaceTimeField> {
    HeatSolver::new(a.clone(), *m, *grid)?.forward(z)
}

pub fn solve_adjoint(
    a: &StiffnessMatrix,
    m: &MassMatrix,
    rhs: &SpaceTimeField,
    grid: &TimeGrid,
) -> Result<SpaceTimeField> {
    HeatSolver::new(a.clone(), *m, *grid)?.adjoint(rhs)
}

pub fn very_weak_solve(
    a: &StiffnessMatrix,
    m: &MassMatrix,
    dirac: &DiracDatum,
    grid: &TimeGrid,
) -> Result<SpaceTimeField> {
    HeatSolver::new(a.clone(), *m, *grid)?.very_weak(dirac)
}
