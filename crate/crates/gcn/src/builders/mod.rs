//! Constructive decomposition builders for minor-free graphs.

pub mod hipd;
pub mod kt;

pub use hipd::{h_ipd, reestablish_invariants, validate_model_state, BuilderTrace, HIpdDecomposition, HIpdOutcome, ModelState, Pattern};
pub use kt::{kt_flat_decomposition, KtDecomposition, KtOutcome};

