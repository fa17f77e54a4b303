//! Wootters concurrence of an arbitrary two-qubit density matrix.
//!
//! `C = max(0, λ₁ − λ₂ − λ₃ − λ₄)` where `λᵢ` are the decreasing square
//! roots of the eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)`. They are obtained
//! here as the singular values of `Wᵀ (σy⊗σy) W` with `ρ = W W†` built from
//! the eigen-decomposition of `ρ`; this avoids square roots of rounding-level
//! eigenvalues, which would otherwise leak `O(1e-8)` errors into pure states.

use nalgebra::{Matrix4, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{RepeaterError, Result};
use crate::state::TwoQubitPureState;

pub type DensityMatrix = Matrix4<Complex64>;

/// Validity tolerance for hermiticity, trace and positivity.
pub const DENSITY_TOLERANCE: f64 = 1e-10;

/// Eigenvalues of `ρ` at or below this are treated as exact zeros.
const RANK_CUTOFF: f64 = 1e-13;

/// `|ψ⟩⟨ψ|`.
pub fn pure_density(s: &TwoQubitPureState) -> DensityMatrix {
    let v = nalgebra::Vector4::from_column_slice(&s.amps);
    v * v.adjoint()
}

fn spin_flip() -> DensityMatrix {
    let one = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    // σy⊗σy is real and anti-diagonal in any ordering of |0⟩, |1⟩.
    DensityMatrix::new(
        z, z, z, -one, //
        z, z, one, z, //
        z, one, z, z, //
        -one, z, z, z,
    )
}

pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let herm_err = (rho - rho.adjoint())
        .iter()
        .map(|x| x.norm())
        .fold(0.0, f64::max);
    if herm_err > DENSITY_TOLERANCE {
        return Err(RepeaterError::InvalidDensityMatrix(format!(
            "not Hermitian (max deviation {herm_err:e})"
        )));
    }
    let trace = rho.trace();
    if (trace - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOLERANCE {
        return Err(RepeaterError::InvalidDensityMatrix(format!(
            "trace is {trace}"
        )));
    }
    let hermitian = (rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(hermitian);
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min < -DENSITY_TOLERANCE {
        return Err(RepeaterError::InvalidDensityMatrix(format!(
            "negative eigenvalue {min:e}"
        )));
    }

    let flip = spin_flip();
    let columns: Vec<_> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .filter(|(mu, _)| **mu > RANK_CUTOFF)
        .map(|(mu, v)| v * Complex64::new(mu.sqrt(), 0.0))
        .collect();
    if columns.is_empty() {
        return Ok(0.0);
    }
    let w = nalgebra::DMatrix::from_fn(4, columns.len(), |r, c| columns[c][r]);
    let flip_dyn = nalgebra::DMatrix::from_iterator(4, 4, flip.iter().copied());
    let tau = w.transpose() * flip_dyn * &w;
    let mut sv: Vec<f64> = SVD::new(tau, false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let c = sv[0] - sv[1..].iter().sum::<f64>();
    Ok(c.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::BellChoice;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn bell_and_product_states() {
        let bell = TwoQubitPureState::bell([1, 8], BellChoice::B).unwrap();
        assert!((wootters_concurrence(&pure_density(&bell)).unwrap() - 1.0).abs() < 1e-14);
        let eg = TwoQubitPureState::single_excitation([1, 8], c(1.0), c(0.0)).unwrap();
        assert!(wootters_concurrence(&pure_density(&eg)).unwrap().abs() < 1e-14);
    }

    #[test]
    fn sin_two_state() {
        // ∝ L₁|eg⟩ + L₅|ge⟩ at λt = 1: magnitudes sin 1, cos 1 with a relative phase.
        let s = TwoQubitPureState::single_excitation(
            [1, 8],
            Complex64::new(0.0, -(1f64.sin())),
            c(1f64.cos()),
        )
        .unwrap();
        let conc = wootters_concurrence(&pure_density(&s)).unwrap();
        assert!((conc - 2f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn werner_states() {
        // p|B⟩⟨B| + (1−p)I/4 has C = max(0, (3p − 1)/2).
        let bell = pure_density(&TwoQubitPureState::bell([1, 8], BellChoice::B).unwrap());
        for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
            let rho = bell * c(p) + DensityMatrix::identity() * c((1.0 - p) / 4.0);
            let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
            assert!(
                (wootters_concurrence(&rho).unwrap() - expected).abs() < 1e-12,
                "p = {p}"
            );
        }
    }

    #[test]
    fn invalid_density_matrices() {
        let mut rho = DensityMatrix::identity() * c(0.25);
        rho[(0, 1)] = c(0.1);
        assert!(wootters_concurrence(&rho).is_err());
        assert!(wootters_concurrence(&(DensityMatrix::identity() * c(0.5))).is_err());
        let mut neg = DensityMatrix::zeros();
        neg[(0, 0)] = c(1.5);
        neg[(1, 1)] = c(-0.5);
        assert!(wootters_concurrence(&neg).is_err());
    }
}
