//! Simulation of a two-stage quantum repeater built from eight two-level
//! atoms with lossy cavity interactions.
//!
//! Stage one entangles atoms (1,4) and (5,8) by a dispersive interaction of
//! the middle atoms followed by a measurement; stage two swaps the
//! entanglement onto (1,8) by a Bell measurement or by a second cavity
//! interaction. [`analytic`] evaluates every step in closed form and
//! [`oracle`] recomputes it by brute-force propagation and projection.

pub mod analytic;
pub mod checks;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod params;
pub mod state;

pub use analytic::{
    bsm_swap, collapse_pair, qed_collapse, qed_joint_state, qed_swap, stage1_coefficients,
    stage1_state, swap, BellChoice, PairVariant, StageOneCoefficients,
};
pub use error::{RepeaterError, Result};
pub use measures::{compare_states, concurrence_pure, ComparisonReport};
pub use num_complex::Complex64;
pub use params::{derive_params, large_detuning_check, DerivedParams, ModelParams};
pub use state::{FourAtomState, PairOutcome, Route, SwapCase, SwapOutcome, TwoQubitPureState};
