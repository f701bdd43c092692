//! Projected limited-memory BFGS in the `⟨·,·⟩_Q` metric.
//!
//! Without a control box the state is affine in the control, so along a
//! search direction `d` the objective is a convex piecewise quadratic in the
//! step length: one extra forward solve for `S d` gives an exact line search
//! whose cost is independent of the number of trial steps. With a box the
//! iterates follow the projection arc and a backtracking Armijo search is
//! used, falling back to a projected gradient step when the quasi-Newton
//! direction is rejected.

use std::collections::VecDeque;

use super::objective::{check_gamma, Evaluation};
use super::{ControlProblem, ObjectiveParts};
use crate::error::Result;
use crate::parabolic::{inner_q, SpaceTimeField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    /// Exit once the (projected) gradient norm is below `tol_opt · max(1, J^γ)`.
    pub tol_opt: f64,
    /// Tolerance for the box variational inequality.
    pub tol_vi: f64,
    pub max_iterations: usize,
    /// Number of stored curvature pairs.
    pub memory: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            tol_opt: 1e-8,
            tol_vi: 1e-6,
            max_iterations: 50_000,
            memory: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    IterationCap,
    LineSearchFailure,
}

/// Outcome of one regularized solve.
#[derive(Debug, Clone)]
pub struct MyResult {
    pub gamma: f64,
    pub control: SpaceTimeField,
    pub state: SpaceTimeField,
    pub adjoint: SpaceTimeField,
    pub j_track: f64,
    pub j_ctrl: f64,
    pub j_pen: f64,
    /// `‖(u - u_b)_+‖_Q`, lumped weights.
    pub violation: f64,
    /// Gradient norm at exit (projected when a box is present).
    pub grad_norm: f64,
    pub iterations: usize,
    pub termination: Termination,
    /// `min_{z ∈ Z_ad} ⟨ξ + αz̄, z - z̄⟩_Q`; `None` without a box.
    pub vi_residual: Option<f64>,
}

impl MyResult {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    pub fn objective(&self) -> f64 {
        self.j_track + self.j_ctrl + self.j_pen
    }

    pub fn unregularized(&self) -> f64 {
        self.j_track + self.j_ctrl
    }

    pub fn parts(&self) -> ObjectiveParts {
        ObjectiveParts {
            track: self.j_track,
            control: self.j_ctrl,
            penalty: self.j_pen,
        }
    }
}

struct Pair {
    s: SpaceTimeField,
    y: SpaceTimeField,
    rho: f64,
}

struct Memory<'a> {
    pairs: VecDeque<Pair>,
    capacity: usize,
    prob: &'a ControlProblem,
}

impl<'a> Memory<'a> {
    fn dot(&self, a: &SpaceTimeField, b: &SpaceTimeField) -> f64 {
        inner_q(a, b, self.prob.solver().mass())
    }

    fn push(&mut self, s: SpaceTimeField, y: SpaceTimeField) {
        let sy = self.dot(&s, &y);
        let ss = self.dot(&s, &s);
        let yy = self.dot(&y, &y);
        if !(sy > 1e-12 * (ss * yy).sqrt()) {
            return;
        }
        if self.pairs.len() == self.capacity {
            self.pairs.pop_front();
        }
        self.pairs.push_back(Pair { s, y, rho: 1.0 / sy });
    }

    /// `-H g` by the two-loop recursion, restricted to the `free` mask.
    fn direction(&self, g: &SpaceTimeField, free: Option<&[bool]>) -> SpaceTimeField {
        let mask = |f: &mut SpaceTimeField| {
            if let Some(free) = free {
                for (v, &keep) in f.values_mut().iter_mut().zip(free) {
                    if !keep {
                        *v = 0.0;
                    }
                }
            }
        };
        let mut q = g.clone();
        mask(&mut q);
        let mut alphas = Vec::with_capacity(self.pairs.len());
        for pair in self.pairs.iter().rev() {
            let a = pair.rho * self.dot(&pair.s, &q);
            q.axpy(-a, &pair.y);
            alphas.push(a);
        }
        if let Some(last) = self.pairs.back() {
            let scale = 1.0 / (last.rho * self.dot(&last.y, &last.y));
            q = q.scaled(scale);
        }
        for (pair, a) in self.pairs.iter().zip(alphas.iter().rev()) {
            let b = pair.rho * self.dot(&pair.y, &q);
            q.axpy(a - b, &pair.s);
        }
        mask(&mut q);
        q.scaled(-1.0)
    }
}

/// Euclidean-gradient representative `M G_k / h`, the quantity whose sign
/// decides activity at a nodal bound.
fn nodal_gradient(prob: &ControlProblem, g: &SpaceTimeField) -> SpaceTimeField {
    let m = prob.solver().mass();
    let h = m.lumped();
    let mut out = prob.zeros();
    for k in 1..g.slots() {
        let slot = out.slot_mut(k);
        m.apply_into(g.slot(k), slot);
        slot.iter_mut().for_each(|v| *v /= h);
    }
    out
}

fn stationarity(prob: &ControlProblem, z: &SpaceTimeField, g: &SpaceTimeField) -> f64 {
    if prob.control_box().is_unconstrained() {
        return g.norm_q(prob.solver().mass());
    }
    let bx = prob.control_box();
    let ng = nodal_gradient(prob, g);
    let step = z.zip_map(&ng, |zi, gi| bx.project(zi - gi) - zi);
    let mut step = step;
    step.slot_mut(0).fill(0.0);
    step.lumped_norm_q()
}

fn vi_residual(prob: &ControlProblem, z: &SpaceTimeField, g: &SpaceTimeField) -> f64 {
    let bx = prob.control_box();
    let m = prob.solver().mass();
    let dt = prob.grid().dt();
    let mut total = 0.0;
    let mut mg = vec![0.0; z.nodes()];
    for k in 1..z.slots() {
        m.apply_into(g.slot(k), &mut mg);
        for (gi, zi) in mg.iter().zip(z.slot(k)) {
            let target = if *gi > 0.0 { bx.lower } else { bx.upper };
            match target {
                Some(b) => total += dt * gi * (b - zi),
                None if *gi != 0.0 => return f64::NEG_INFINITY,
                None => {}
            }
        }
    }
    total
}

/// Derivative of `φ(t) = J^γ(z + t d)` for an affine state `u + t S d`.
struct LineModel<'a> {
    linear: f64,
    quadratic: f64,
    shifted: &'a [f64],
    step: &'a [f64],
    weight: f64,
    gamma: f64,
}

impl LineModel<'_> {
    fn slope(&self, t: f64) -> (f64, f64) {
        let mut d1 = self.linear + t * self.quadratic;
        let mut d2 = self.quadratic;
        for (q, du) in self.shifted.iter().zip(self.step) {
            let v = q + t * self.gamma * du;
            if v > 0.0 {
                d1 += self.weight * v * du;
                d2 += self.weight * self.gamma * du * du;
            }
        }
        (d1, d2)
    }

    /// Root of the nondecreasing piecewise-linear `φ'`; `None` if `d` is not a
    /// descent direction.
    fn minimize(&self) -> Option<f64> {
        let (d0, _) = self.slope(0.0);
        if !(d0 < 0.0) {
            return None;
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        let mut expansions = 0;
        loop {
            let (d, _) = self.slope(hi);
            if d >= 0.0 {
                break;
            }
            lo = hi;
            hi *= 2.0;
            expansions += 1;
            if expansions > 200 {
                return None;
            }
        }
        let mut t = hi;
        for _ in 0..200 {
            let (d1, d2) = self.slope(t);
            if d1.abs() <= 1e-14 * d0.abs() {
                return Some(t);
            }
            if d1 < 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let newton = t - d1 / d2;
            t = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo <= 1e-15 * hi {
                return Some(t);
            }
        }
        Some(t)
    }
}

fn exact_step(
    prob: &ControlProblem,
    gamma: f64,
    ev: &Evaluation,
    z: &SpaceTimeField,
    d: &SpaceTimeField,
    du: &SpaceTimeField,
) -> Option<f64> {
    let m = prob.solver().mass();
    let alpha = prob.alpha();
    let misfit = ev.state.zip_map(prob.desired(), |a, b| a - b);
    let n = z.nodes();
    let shifted: Vec<f64> = ev.state.values()[n..]
        .iter()
        .zip(&prob.upper_bound().values()[n..])
        .zip(&prob.mu_hat().values()[n..])
        .map(|((u, b), mu)| mu + gamma * (u - b))
        .collect();
    let model = LineModel {
        linear: inner_q(&misfit, du, m) + alpha * inner_q(z, d, m),
        quadratic: inner_q(du, du, m) + alpha * inner_q(d, d, m),
        shifted: &shifted,
        step: &du.values()[n..],
        weight: prob.grid().dt() * m.lumped(),
        gamma,
    };
    model.minimize()
}

/// Minimizes `J^γ` over the admissible controls starting from `z_init`
/// (projected onto the box first).
pub fn minimize(
    prob: &ControlProblem,
    gamma: f64,
    z_init: &SpaceTimeField,
    options: &MinimizeOptions,
) -> Result<MyResult> {
    check_gamma(gamma)?;
    prob.zeros().check_shape(z_init, "initial control")?;
    let unconstrained = prob.control_box().is_unconstrained();
    let solver = prob.solver();
    let mut memory = Memory {
        pairs: VecDeque::new(),
        capacity: options.memory.max(1),
        prob,
    };

    let mut z = prob.project(z_init);
    let mut ev = Evaluation::new(prob, gamma, &z)?;
    let mut termination = Termination::IterationCap;
    let mut iterations = 0;

    while iterations < options.max_iterations {
        let j = ev.parts.total();
        if stationarity(prob, &z, &ev.gradient) <= options.tol_opt * j.max(1.0) {
            termination = Termination::Converged;
            break;
        }
        iterations += 1;

        let (z_next, ev_next) = if unconstrained {
            let mut d = memory.direction(&ev.gradient, None);
            if inner_q(&ev.gradient, &d, solver.mass()) >= 0.0 {
                memory.pairs.clear();
                d = ev.gradient.scaled(-1.0);
            }
            let du = solver.forward(&d)?;
            let Some(t) = exact_step(prob, gamma, &ev, &z, &d, &du) else {
                termination = Termination::LineSearchFailure;
                break;
            };
            let mut z_next = z.clone();
            z_next.axpy(t, &d);
            // refresh the state from scratch now and then to stop drift
            let u_next = if iterations % 64 == 0 {
                prob.state(&z_next)?
            } else {
                let mut u = ev.state.clone();
                u.axpy(t, &du);
                u
            };
            let ev_next = Evaluation::at_state(prob, gamma, &z_next, u_next)?;
            (z_next, ev_next)
        } else {
            match projected_step(prob, gamma, &memory, &z, &ev)? {
                Some(next) => next,
                None => {
                    termination = Termination::LineSearchFailure;
                    break;
                }
            }
        };

        let s = z_next.zip_map(&z, |a, b| a - b);
        let y = ev_next.gradient.zip_map(&ev.gradient, |a, b| a - b);
        memory.push(s, y);
        z = z_next;
        ev = ev_next;
    }

    if termination == Termination::Converged && unconstrained && iterations > 0 {
        // exit statistics from a clean forward solve
        let fresh = Evaluation::new(prob, gamma, &z)?;
        ev = fresh;
    }
    Ok(finish(prob, gamma, z, ev, iterations, termination, options))
}

fn projected_step(
    prob: &ControlProblem,
    gamma: f64,
    memory: &Memory,
    z: &SpaceTimeField,
    ev: &Evaluation,
) -> Result<Option<(SpaceTimeField, Evaluation)>> {
    let bx = prob.control_box();
    let m = prob.solver().mass();
    let ng = nodal_gradient(prob, &ev.gradient);
    let free: Vec<bool> = z
        .values()
        .iter()
        .zip(ng.values())
        .map(|(&zi, &gi)| !((bx.at_lower(zi) && gi > 0.0) || (bx.at_upper(zi) && gi < 0.0)))
        .collect();
    let j0 = ev.parts.total();

    let quasi_newton = memory.direction(&ev.gradient, Some(&free));
    let gradient_step = ng.scaled(-1.0);
    for d in [quasi_newton, gradient_step] {
        let mut t = 1.0;
        for _ in 0..60 {
            let mut trial = z.clone();
            trial.axpy(t, &d);
            let trial = prob.project(&trial);
            let delta = trial.zip_map(z, |a, b| a - b);
            let decrease = inner_q(&ev.gradient, &delta, m);
            if decrease >= 0.0 {
                t *= 0.5;
                continue;
            }
            let u = prob.state(&trial)?;
            let next = Evaluation::at_state(prob, gamma, &trial, u)?;
            let j = next.parts.total();
            if j <= j0 + 1e-4 * decrease || (j - j0).abs() <= 4.0 * f64::EPSILON * j0.abs() {
                return Ok(Some((trial, next)));
            }
            t *= 0.5;
        }
    }
    Ok(None)
}

fn finish(
    prob: &ControlProblem,
    gamma: f64,
    z: SpaceTimeField,
    ev: Evaluation,
    iterations: usize,
    termination: Termination,
    options: &MinimizeOptions,
) -> MyResult {
    let grad_norm = stationarity(prob, &z, &ev.gradient);
    let vi = (!prob.control_box().is_unconstrained()).then(|| vi_residual(prob, &z, &ev.gradient));
    let termination = match (termination, vi) {
        (Termination::Converged, Some(r)) if r < -options.tol_vi => Termination::IterationCap,
        (t, _) => t,
    };
    let excess = ev.state.zip_map(prob.upper_bound(), |u, b| (u - b).max(0.0));
    MyResult {
        gamma,
        j_track: ev.parts.track,
        j_ctrl: ev.parts.control,
        j_pen: ev.parts.penalty,
        violation: excess.lumped_norm_q(),
        grad_norm,
        iterations,
        termination,
        vi_residual: vi,
        control: z,
        state: ev.state,
        adjoint: ev.adjoint,
    }
}
