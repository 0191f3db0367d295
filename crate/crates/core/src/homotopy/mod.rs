//! The path algebra `Ω = L⊗𝕂[t,dt]`, homotopies and their gauges.

pub mod json;
pub mod ode;
pub mod omega;
pub mod path;

pub use json::{omega_from_json, omega_to_json, path_from_json, path_to_json};
pub use ode::{
    bch_gamma, gauge_from_homotopy, gauge_ode_lhs, homotopy_from_gauge, solve_gauge_ode,
};
pub use omega::{tangent_difference_image, OmegaElement, OmegaMcReport};
pub use path::{PathSpace, PolyPath};
