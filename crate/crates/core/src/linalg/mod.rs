//! Exact rational scalars and dense linear algebra.
//!
//! Every elimination pivots on the lowest available index so that bases,
//! complements and preimages are reproducible functions of the input order.

pub mod matrix;
pub mod scalar;
pub mod subspace;
pub mod vector;

pub use matrix::{AffineSolution, Matrix};
pub use scalar::Scalar;
pub use subspace::{complement, Echelon, Subspace};

use crate::error::Result;

/// Solves `A x = b` exactly; `None` when `b` is not in the image of `A`.
pub fn solve_affine(a: &Matrix, b: &[Scalar]) -> Result<Option<AffineSolution>> {
    a.solve_affine(b)
}

pub fn kernel(a: &Matrix) -> Subspace {
    a.kernel()
}

pub fn image(a: &Matrix) -> Subspace {
    a.image()
}
