//! Numerical ground truth for the closed-form protocol: matrix-exponential
//! propagation, generic projective measurement, the Wootters concurrence and
//! a full-model check of the dispersive approximation.

mod expm;
mod hamiltonian;
pub mod pipeline;
mod postselect;
mod validity;
mod wootters;

pub use expm::expm;
pub use hamiltonian::{
    build_effective, build_full, embed_pair_operator, excitations, full_basis_index, CMat,
    HamiltonianKind, OracleHamiltonian, DEFAULT_PHOTON_CUTOFF, MIN_PHOTON_CUTOFF,
};
pub use postselect::{postselect, propagate, propagate_pair, MultiAtomState};
pub use validity::{
    full_vs_effective_report, full_vs_effective_report_with, FullModelConfig,
    FullVsEffectiveReport, ValidityRow,
};
pub use wootters::{pure_density, wootters_concurrence, DensityMatrix, DENSITY_TOLERANCE};
