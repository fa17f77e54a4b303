use thiserror::Error;

/// Errors raised by parameter validation, state handling and the oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepeaterError {
    /// The complex detuning `Δ + i(κ−Γ)/2` vanished, so `λ = g²/δ` is undefined.
    #[error("singular detuning: delta = {delta} and kappa = gamma make the complex detuning zero")]
    SingularDetuning { delta: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A measurement outcome with zero Born probability; the collapsed state is undefined.
    #[error("degenerate measurement: outcome {outcome} has zero probability")]
    DegenerateMeasurement { outcome: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm = {norm})")]
    Unnormalized { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("photon cutoff {cutoff} is too small (need at least {minimum})")]
    CutoffTooSmall { cutoff: usize, minimum: usize },

    #[error("invalid atom labels: {0}")]
    InvalidLabels(String),
}

pub type Result<T> = std::result::Result<T, RepeaterError>;
