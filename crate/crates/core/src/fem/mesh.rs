use crate::error::{Error, Result};

/// Uniform mesh of the interval `(a, b)` with `n` interior nodes.
///
/// Interior node `i` (0-based) sits at `a + (i + 1) h`; hat functions vanish at
/// the endpoints and everywhere outside the interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh1D {
    a: f64,
    b: f64,
    n: usize,
}

impl Mesh1D {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::domain(format!("interval ({a}, {b}) must satisfy a < b")));
        }
        if n == 0 {
            return Err(Error::domain("mesh needs at least one interior node"));
        }
        Ok(Self { a, b, n })
    }

    pub fn left(&self) -> f64 {
        self.a
    }

    pub fn right(&self) -> f64 {
        self.b
    }

    /// Number of interior nodes (degrees of freedom).
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / (self.n + 1) as f64
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Coordinate of interior node `i`, `0 <= i < n`.
    pub fn node(&self, i: usize) -> f64 {
        self.a + (i + 1) as f64 * self.h()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.node(i))
    }

    /// Value of the hat function of interior node `i` at `x`.
    pub fn hat(&self, i: usize, x: f64) -> f64 {
        let d = (x - self.node(i)).abs() / self.h();
        if d < 1.0 {
            1.0 - d
        } else {
            0.0
        }
    }
}

/// Fractional order `s` in the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(s: f64) -> Result<Self> {
        if s > 0.0 && s < 1.0 {
            Ok(Self(s))
        } else {
            Err(Error::domain(format!("s must lie in (0,1), got {s}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}
