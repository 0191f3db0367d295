//! Graded vector spaces on bounded windows, graded maps and cohomology.

mod complex;
mod space;

pub use complex::{
    cohomology, verify_complex, CohomologyData, ComplexReport, DegreeCohomology, GradedMap,
};
pub use space::{shift, GradedSpace};
