//! Differential graded Lie algebras: storage, axioms, morphisms and the
//! concrete families used throughout the crate.

mod algebra;
pub mod builders;
pub mod fixtures;
pub mod graded_algebra;
pub mod json;
mod morphism;
mod validate;

pub use algebra::{sparse, Dgla, DglaBuilder, SparseVec, StrayEntry};
pub use builders::*;
pub use graded_algebra::{AssocAlgebra, GradedAlgebra};
pub use morphism::{
    cohomology_dgla, induced_cohomology_maps, is_bijective, is_quasi_isomorphism, DglaMorphism,
};
pub use validate::{validate_dgla, Identity, ValidationReport, Violation};
