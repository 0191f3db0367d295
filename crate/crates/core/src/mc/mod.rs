//! Maurer–Cartan equation over `L⊗m_A`, obstructions and lifts.

pub mod diagnostics;
pub mod element;
pub mod equation;
pub mod json;
pub mod obstruction;

pub use diagnostics::{
    base_change_holds, homogeneity_check, sample_element, sample_mc, smoothness_diagnostics,
    HomogeneityReport, McSampler, SmoothnessReport,
};
pub use element::{TensorDgla, TensorElement};
pub use equation::{mc_check, mc_residual, mc_tangent};
pub use json::{element_from_json, element_from_value_json, element_to_json};
pub use obstruction::{
    lift_through_extension, obstruction_of_lift, primary_obstruction, LiftingProblem,
    ObstructionClass,
};
