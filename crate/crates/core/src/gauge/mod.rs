//! Exponential calculus on `L⁰⊗m_A`, the gauge action and Iso obstructions.

pub mod action;
pub mod bch;
pub mod deformation;
pub mod pga;

pub use action::{exp_action, gauge_bch};
pub use bch::{bch, NilpotentLie};
pub use deformation::{
    bracket_pairing, cohomology_map, def_tangent, gauge_equivalent, irrelevant_subalgebra,
    iso_obstruction, tangent_gauge_image, thm31_report, EquivalenceDecision, Inequivalence,
    IrrelevantSubalgebra, IsoObstruction, MorphismReport, MorphismVerdict, Verdict,
    DEFAULT_SEARCH_BUDGET,
};
pub use pga::{
    d2_envelope, end_algebra, AgreementReport, EndPositions, Pga, PgaEmbedding, PgaOver,
};
