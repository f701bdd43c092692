use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use super::FracOrder;
use crate::error::{Error, Result};

/// Normalization constant `C_{N,s}` of the integral fractional Laplacian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationConstant {
    pub value: f64,
    pub dim: usize,
}

/// `C_{N,s} = s 4^s Γ((N + 2s)/2) / (π^{N/2} Γ(1 - s))`.
pub fn normalization_constant(dim: usize, s: FracOrder) -> Result<NormalizationConstant> {
    if dim == 0 {
        return Err(Error::domain("spatial dimension must be at least 1"));
    }
    let s = s.value();
    let n = dim as f64;
    let value = s * 2f64.powf(2.0 * s) * gamma((2.0 * s + n) / 2.0)
        / (PI.powf(n / 2.0) * gamma(1.0 - s));
    Ok(NormalizationConstant { value, dim })
}

/// Integrability condition on the data exponents: `N/(2ps) + 1/r < 1`, strictly.
pub fn check_integrability(dim: usize, p: f64, r: f64, s: FracOrder) -> Result<bool> {
    if dim == 0 {
        return Err(Error::domain("spatial dimension must be at least 1"));
    }
    if !(p >= 1.0) || !(r >= 1.0) {
        return Err(Error::domain(format!("exponents must satisfy p, r >= 1 (p={p}, r={r})")));
    }
    Ok(dim as f64 / (2.0 * p * s.value()) + 1.0 / r < 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn order(s: f64) -> FracOrder {
        FracOrder::new(s).unwrap()
    }

    #[test]
    fn closed_form_values() {
        let c = normalization_constant(1, order(0.5)).unwrap();
        assert_relative_eq!(c.value, 1.0 / PI, max_relative = 1e-12);
        let c = normalization_constant(2, order(0.5)).unwrap();
        assert_relative_eq!(c.value, 1.0 / (2.0 * PI), max_relative = 1e-12);
        // mpmath, 20 digits
        let c = normalization_constant(1, order(0.8)).unwrap();
        assert_relative_eq!(c.value, 0.267_479_690_930_975_04, max_relative = 1e-12);
    }

    #[test]
    fn bounded_near_one() {
        for s in [0.9, 0.99, 0.999] {
            let c = normalization_constant(1, order(s)).unwrap().value;
            let scaled = c * gamma(1.0 - s);
            assert!(c > 0.0 && scaled.is_finite() && scaled > 0.0 && scaled < 10.0);
        }
        let near = normalization_constant(1, order(0.999)).unwrap().value;
        let far = normalization_constant(1, order(0.9)).unwrap().value;
        assert!(near < far);
    }

    #[test]
    fn rejects_zero_dimension() {
        assert!(normalization_constant(0, order(0.5)).is_err());
    }

    #[test]
    fn integrability_is_strict() {
        assert!(check_integrability(1, 2.0, 2.0, order(0.8)).unwrap());
        assert!(!check_integrability(1, 1.0, 1.0, order(0.3)).unwrap());
        assert!(!check_integrability(1, 2.0, 2.0, order(0.5)).unwrap());
        assert!(check_integrability(1, 0.5, 2.0, order(0.5)).is_err());
    }
}
