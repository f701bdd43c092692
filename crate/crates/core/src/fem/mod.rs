//! Spatial discretization on a 1D interval with P1 hat functions.

mod constant;
mod eigen;
mod mass;
mod mesh;
mod stiffness;

pub use constant::{check_integrability, normalization_constant, NormalizationConstant};
pub use eigen::{smallest_eigenvalue, Eigenpair, EIGEN_MAX_ITERATIONS, EIGEN_TOLERANCE};
pub use mass::{assemble_mass, MassMatrix};
pub use mesh::{FracOrder, Mesh1D};
pub use stiffness::{assemble_stiffness, StiffnessMatrix};
