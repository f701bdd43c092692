use super::{HeatSolver, SpaceTimeField};
use crate::error::{Error, Result};
use crate::fem::{check_integrability, MassMatrix};

/// Space-time norms of a nodal field.
///
/// `l2_q` uses the consistent mass matrix in space and the trapezoid rule over
/// all time slots; `lr_lp` is the discrete `L^r(0,T; L^p(Ω))` norm with
/// lumped-mass power sums in space (the mass matrix exactly when `p = 2`).
/// Infinite exponents are encoded as `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    pub linf_q: f64,
    pub l2_q: f64,
    pub lr_lp: f64,
    pub p: f64,
    pub r: f64,
}

fn spatial_norm(v: &[f64], p: f64, m: &MassMatrix) -> f64 {
    if p == f64::INFINITY {
        v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    } else if p == 2.0 {
        m.inner(v, v).max(0.0).sqrt()
    } else {
        (m.lumped() * v.iter().map(|x| x.abs().powf(p)).sum::<f64>()).powf(1.0 / p)
    }
}

pub fn norms(u: &SpaceTimeField, m: &MassMatrix, p: f64, r: f64) -> Result<NormReport> {
    if !(p >= 1.0) || !(r >= 1.0) {
        return Err(Error::domain(format!("norm exponents must be >= 1 (p={p}, r={r})")));
    }
    if m.dim() != u.nodes() {
        return Err(Error::dimension("mass matrix does not match field"));
    }
    let grid = u.grid();
    let l2_q = (0..u.slots())
        .map(|k| grid.trapezoid_weight(k) * m.inner(u.slot(k), u.slot(k)))
        .sum::<f64>()
        .max(0.0)
        .sqrt();
    let per_slot: Vec<f64> = (0..u.slots()).map(|k| spatial_norm(u.slot(k), p, m)).collect();
    let lr_lp = if r == f64::INFINITY {
        per_slot.iter().fold(0.0, |acc: f64, x| acc.max(*x))
    } else {
        per_slot
            .iter()
            .enumerate()
            .map(|(k, x)| grid.trapezoid_weight(k) * x.powf(r))
            .sum::<f64>()
            .powf(1.0 / r)
    };
    Ok(NormReport {
        linf_q: u.max_abs(),
        l2_q,
        lr_lp,
        p,
        r,
    })
}

/// `‖u‖_{L∞(Q)} / ‖z‖_{L^r L^p}` for the forward state `u` of `z`.
///
/// Requires `1/(2ps) + 1/r < 1`, under which the ratio stays bounded as the
/// mesh is refined.
pub fn linf_ratio_check(solver: &HeatSolver, z: &SpaceTimeField, p: f64, r: f64) -> Result<f64> {
    if !check_integrability(1, p, r, solver.order())? {
        return Err(Error::domain(format!(
            "exponents p={p}, r={r} violate 1/(2ps) + 1/r < 1 for s={}",
            solver.order().value()
        )));
    }
    let denom = norms(z, solver.mass(), p, r)?.lr_lp;
    if denom == 0.0 {
        return Err(Error::domain("ratio undefined for zero data"));
    }
    let u = solver.forward(z)?;
    Ok(u.max_abs() / denom)
}
