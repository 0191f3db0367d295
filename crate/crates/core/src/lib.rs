//! Exact computations with finite-dimensional differential graded Lie
//! algebras: Maurer-Cartan solutions over Artin rings, gauge and homotopy
//! equivalence, obstruction classes and Kuranishi normal forms.

pub mod artin;
pub mod dgla;
pub mod error;
pub mod gauge;
pub mod graded;
pub mod homotopy;
pub mod kuranishi;
pub mod linalg;
pub mod mc;
pub mod rng;
pub mod workbench;

pub use error::{Error, Result};
