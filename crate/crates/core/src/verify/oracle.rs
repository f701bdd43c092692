//! Brute-force quadrature references, independent of the closed-form
//! assembly: stiffness entries from the double integral and the fractional
//! Laplacian of a function at a point.

use quadrature::integrate;

use crate::error::{Error, Result};
use crate::fem::{normalization_constant, FracOrder, Mesh1D};

const ABS_TOL: f64 = 1e-14;

/// Slope of the hat `φ_i` on element `e`, where element `e` spans
/// `[x_{e-1}, x_e]` with the convention `x_{-1} = a`.
fn hat_slope(mesh: &Mesh1D, i: usize, e: usize) -> f64 {
    let h = mesh.h();
    if e == i {
        1.0 / h
    } else if e == i + 1 {
        -1.0 / h
    } else {
        0.0
    }
}

fn breakpoints(mesh: &Mesh1D) -> Vec<f64> {
    (0..=mesh.len() + 1).map(|k| mesh.left() + k as f64 * mesh.h()).collect()
}

/// `A_ij = C/2 ∫_Ω∫_Ω (φ_i(x)-φ_i(y))(φ_j(x)-φ_j(y)) |x-y|^{-1-2s} dy dx
///        + C ∫_Ω φ_i φ_j ((x-a)^{-2s} + (b-x)^{-2s}) / (2s) dx`.
///
/// Both integrals are split at the nodes. The inner piece lying in the same
/// element as `x` is integrated exactly, as both hats are linear there.
pub fn stiffness_entry(mesh: &Mesh1D, s: FracOrder, i: usize, j: usize) -> Result<f64> {
    let n = mesh.len();
    if i >= n || j >= n {
        return Err(Error::dimension(format!("entry ({i}, {j}) outside a {n}-node mesh")));
    }
    let sv = s.value();
    let c = normalization_constant(1, s)?.value;
    let (a, b) = (mesh.left(), mesh.right());
    let knots = breakpoints(mesh);
    let elements = knots.len() - 1;
    let e1 = 1.0 + 2.0 * sv;

    let inner = |x: f64, e: usize| -> f64 {
        let (lo, hi) = (knots[e], knots[e + 1]);
        let (fi, fj) = (mesh.hat(i, x), mesh.hat(j, x));
        let gg = hat_slope(mesh, i, e) * hat_slope(mesh, j, e);
        let p = 2.0 - 2.0 * sv;
        let mut total = gg * ((x - lo).powf(p) + (hi - x).powf(p)) / p;
        for f in 0..elements {
            if f == e {
                continue;
            }
            let (l, r) = (knots[f], knots[f + 1]);
            let piece = if f > e {
                let gap = l - x;
                integrate(
                    |t| {
                        let y = l + t;
                        (fi - mesh.hat(i, y)) * (fj - mesh.hat(j, y)) / (gap + t).powf(e1)
                    },
                    0.0,
                    r - l,
                    ABS_TOL,
                )
            } else {
                let gap = x - r;
                integrate(
                    |t| {
                        let y = r - t;
                        (fi - mesh.hat(i, y)) * (fj - mesh.hat(j, y)) / (gap + t).powf(e1)
                    },
                    0.0,
                    r - l,
                    ABS_TOL,
                )
            };
            total += piece.integral;
        }
        0.5 * total + mesh.hat(i, x) * mesh.hat(j, x) * ((x - a).powf(-2.0 * sv) + (b - x).powf(-2.0 * sv)) / (2.0 * sv)
    };

    let mut sum = 0.0;
    for e in 0..elements {
        sum += integrate(|x| inner(x, e), knots[e], knots[e + 1], ABS_TOL).integral;
    }
    Ok(c * sum)
}

/// Dense stiffness matrix entry by entry from [`stiffness_entry`].
#[allow(clippy::needless_range_loop)]
pub fn stiffness_matrix(mesh: &Mesh1D, s: FracOrder) -> Result<Vec<Vec<f64>>> {
    let n = mesh.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = stiffness_entry(mesh, s, i, j)?;
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    Ok(out)
}

/// Point evaluation of the fractional Laplacian in one dimension,
/// `C ∫_0^∞ (2u(x) - u(x+t) - u(x-t)) t^{-1-2s} dt`.
///
/// `u` must be `C²` near `x` with second derivative `u2`; below `delta` the
/// second difference is replaced by its Taylor term. `kinks` lists the
/// offsets `t` where `u(x±t)` loses smoothness and `support` an offset
/// beyond which `u(x±t)` vanishes.
pub fn fractional_laplacian_at(
    u: impl Fn(f64) -> f64,
    x: f64,
    u2: f64,
    s: FracOrder,
    kinks: &[f64],
    support: f64,
) -> Result<f64> {
    let sv = s.value();
    let c = normalization_constant(1, s)?.value;
    let delta = 1e-3_f64.min(0.5 * kinks.iter().chain([&support]).fold(f64::INFINITY, |m, k| m.min(*k)));
    let ux = u(x);
    let mut cuts: Vec<f64> = kinks.iter().copied().filter(|k| *k > delta && *k < support).collect();
    cuts.push(delta);
    cuts.push(support);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut total = -u2 * delta.powf(2.0 - 2.0 * sv) / (2.0 - 2.0 * sv);
    for w in cuts.windows(2) {
        total += integrate(|t| (2.0 * ux - u(x + t) - u(x - t)) / t.powf(1.0 + 2.0 * sv), w[0], w[1], ABS_TOL).integral;
    }
    total += 2.0 * ux * support.powf(-2.0 * sv) / (2.0 * sv);
    Ok(c * total)
}
