//! Pure-state concurrence and state-distance helpers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RepeaterError, Result};
use crate::state::{TwoQubitPureState, NORM_TOLERANCE};

/// Concurrence `2|ad − bc|` of a normalized two-qubit pure state
/// `a|ee⟩ + b|eg⟩ + c|ge⟩ + d|gg⟩`.
pub fn concurrence_pure(s: &TwoQubitPureState) -> Result<f64> {
    let norm = s.norm();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(RepeaterError::Unnormalized { norm });
    }
    let [a, b, c, d] = s.amps;
    Ok((2.0 * (a * d - b * c).norm()).min(1.0))
}

/// `⟨x|y⟩`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn argmax_abs(amps: &[Complex64]) -> Option<usize> {
    amps.iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, a)| {
            let m = a.norm();
            match best {
                Some((_, bm)) if bm >= m => best,
                _ => Some((i, m)),
            }
        })
        .map(|(i, _)| i)
}

fn rotate(amps: &[Complex64], reference: Complex64) -> Vec<Complex64> {
    let phase = reference.conj() / reference.norm();
    amps.iter().map(|a| a * phase).collect()
}

/// Removes the global phase by making the largest-magnitude amplitude real and positive.
pub fn align_global_phase(amps: &[Complex64]) -> Vec<Complex64> {
    match argmax_abs(amps) {
        Some(i) if amps[i].norm() > 0.0 => rotate(amps, amps[i]),
        _ => amps.to_vec(),
    }
}

/// Distance summary between two normalized state vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub fidelity: f64,
    pub infidelity: f64,
    /// Largest amplitude difference after both states are phase-aligned.
    pub max_amp_diff: f64,
    /// False if `y` has no weight where `x` peaks, so no common phase could be fixed.
    pub phase_aligned: bool,
}

/// Compares `x` and `y` up to global phase.
///
/// Both vectors are rotated so that the amplitude at the position where `x`
/// is largest becomes real-positive; using one shared reference index keeps
/// near-degenerate magnitudes (Bell states) from picking different pivots.
pub fn compare_states(x: &[Complex64], y: &[Complex64]) -> Result<ComparisonReport> {
    if x.len() != y.len() {
        return Err(RepeaterError::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let fidelity = inner(x, y).norm_sqr().clamp(0.0, 1.0);
    let (xa, ya, phase_aligned) = match argmax_abs(x) {
        Some(i) if x[i].norm() > 0.0 && y[i].norm() > 0.0 => {
            (rotate(x, x[i]), rotate(y, y[i]), true)
        }
        _ => (x.to_vec(), y.to_vec(), false),
    };
    let max_amp_diff = xa
        .iter()
        .zip(&ya)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(ComparisonReport {
        fidelity,
        infidelity: 1.0 - fidelity,
        max_amp_diff,
        phase_aligned,
    })
}
