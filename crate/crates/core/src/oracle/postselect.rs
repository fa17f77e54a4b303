//! Labeled multi-atom state vectors and projective post-selection.

use nalgebra::DVector;
use num_complex::Complex64;

use super::expm::expm;
use super::hamiltonian::{embed_pair_operator, HamiltonianKind, OracleHamiltonian};
use crate::error::{RepeaterError, Result};
use crate::state::{norm_of, FourAtomState, TwoQubitPureState, NORM_TOLERANCE};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// State vector over `2^labels.len()` product kets, in the crate-wide basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiAtomState {
    pub labels: Vec<u8>,
    pub amps: Vec<Complex64>,
}

impl MultiAtomState {
    pub fn new(labels: Vec<u8>, amps: Vec<Complex64>) -> Result<Self> {
        let expected = 1usize << labels.len();
        if amps.len() != expected {
            return Err(RepeaterError::DimensionMismatch {
                expected,
                found: amps.len(),
            });
        }
        let mut seen = labels.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != labels.len() {
            return Err(RepeaterError::InvalidLabels(format!(
                "duplicate labels in {labels:?}"
            )));
        }
        Ok(Self { labels, amps })
    }

    pub fn tensor(&self, other: &MultiAtomState) -> Result<Self> {
        let labels = self.labels.iter().chain(&other.labels).copied().collect();
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Self::new(labels, amps)
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(RepeaterError::Unnormalized { norm: n });
        }
        Ok(Self {
            labels: self.labels.clone(),
            amps: self.amps.iter().map(|a| a / n).collect(),
        })
    }

    fn position(&self, label: u8) -> Result<usize> {
        self.labels.iter().position(|&l| l == label).ok_or_else(|| {
            RepeaterError::InvalidLabels(format!("atom {label} not in {:?}", self.labels))
        })
    }

    /// Reorders the register so that labels ascend.
    pub fn sorted(&self) -> Self {
        let n = self.labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| self.labels[k]);
        let mut amps = vec![ZERO; self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let j = order
                .iter()
                .fold(0usize, |acc, &src| (acc << 1) | ((i >> (n - 1 - src)) & 1));
            amps[j] = *a;
        }
        Self {
            labels: order.iter().map(|&k| self.labels[k]).collect(),
            amps,
        }
    }

    pub fn to_two_qubit(&self) -> Result<TwoQubitPureState> {
        let s = self.sorted();
        let labels: [u8; 2] =
            s.labels
                .as_slice()
                .try_into()
                .map_err(|_| RepeaterError::DimensionMismatch {
                    expected: 2,
                    found: s.labels.len(),
                })?;
        let amps: [Complex64; 4] = s
            .amps
            .as_slice()
            .try_into()
            .expect("two atoms have four amplitudes");
        TwoQubitPureState::new(labels, amps)
    }

    pub fn to_four_atom(&self) -> Result<FourAtomState> {
        let s = self.sorted();
        let labels: [u8; 4] =
            s.labels
                .as_slice()
                .try_into()
                .map_err(|_| RepeaterError::DimensionMismatch {
                    expected: 4,
                    found: s.labels.len(),
                })?;
        let amps: [Complex64; 16] = s
            .amps
            .as_slice()
            .try_into()
            .expect("four atoms have sixteen amplitudes");
        FourAtomState::new(labels, amps)
    }
}

impl From<&TwoQubitPureState> for MultiAtomState {
    fn from(s: &TwoQubitPureState) -> Self {
        Self {
            labels: s.labels.to_vec(),
            amps: s.amps.to_vec(),
        }
    }
}

impl From<&FourAtomState> for MultiAtomState {
    fn from(s: &FourAtomState) -> Self {
        Self {
            labels: s.labels.to_vec(),
            amps: s.amps.to_vec(),
        }
    }
}

/// Projects `atoms` of `state` onto `outcome` (a ket over those atoms, in
/// the order given) and returns the renormalized remainder together with
/// the Born probability computed from the normalized input.
pub fn postselect(
    state: &MultiAtomState,
    atoms: &[u8],
    outcome: &[Complex64],
) -> Result<(MultiAtomState, f64)> {
    let k = atoms.len();
    if outcome.len() != 1 << k {
        return Err(RepeaterError::DimensionMismatch {
            expected: 1 << k,
            found: outcome.len(),
        });
    }
    let onorm = norm_of(outcome);
    if (onorm - 1.0).abs() > NORM_TOLERANCE {
        return Err(RepeaterError::Unnormalized { norm: onorm });
    }
    let n = state.labels.len();
    let measured: Vec<usize> = atoms
        .iter()
        .map(|&a| state.position(a))
        .collect::<Result<_>>()?;
    let kept: Vec<usize> = (0..n).filter(|p| !measured.contains(p)).collect();
    let bit = |i: usize, pos: usize| (i >> (n - 1 - pos)) & 1;

    let mut rest = vec![ZERO; 1 << kept.len()];
    for (i, a) in state.amps.iter().enumerate() {
        if *a == ZERO {
            continue;
        }
        let m = measured.iter().fold(0, |acc, &p| (acc << 1) | bit(i, p));
        let r = kept.iter().fold(0, |acc, &p| (acc << 1) | bit(i, p));
        rest[r] += outcome[m].conj() * a;
    }
    let total = state.norm();
    let weight = norm_of(&rest);
    let probability = if total > 0.0 {
        (weight / total).powi(2)
    } else {
        0.0
    };
    if !(probability > 0.0) {
        return Err(RepeaterError::DegenerateMeasurement {
            outcome: format!("projection of atoms {atoms:?}"),
        });
    }
    let labels = kept.iter().map(|&p| state.labels[p]).collect();
    let collapsed = MultiAtomState::new(labels, rest)?.normalized()?;
    Ok((collapsed, probability))
}

/// `e^{−iH·duration} ψ₀` for a state vector in the Hamiltonian's own basis.
///
/// The result is not renormalized; with unbalanced losses its norm shrinks or grows.
pub fn propagate(
    h: &OracleHamiltonian,
    psi0: &DVector<Complex64>,
    duration: f64,
) -> Result<DVector<Complex64>> {
    if psi0.len() != h.dim() {
        return Err(RepeaterError::DimensionMismatch {
            expected: h.dim(),
            found: psi0.len(),
        });
    }
    if duration == 0.0 {
        return Ok(psi0.clone());
    }
    let generator = h.matrix.map(|x| x * Complex64::new(0.0, -duration));
    Ok(expm(&generator) * psi0)
}

/// Evolves atoms `pair` of a labeled register under an effective pair Hamiltonian.
pub fn propagate_pair(
    h: &OracleHamiltonian,
    state: &MultiAtomState,
    pair: [u8; 2],
    duration: f64,
) -> Result<MultiAtomState> {
    if h.kind != HamiltonianKind::Effective {
        return Err(RepeaterError::DimensionMismatch {
            expected: 4,
            found: h.dim(),
        });
    }
    let positions = [state.position(pair[0])?, state.position(pair[1])?];
    let lifted = OracleHamiltonian {
        kind: HamiltonianKind::Effective,
        matrix: embed_pair_operator(&h.matrix, positions, state.labels.len()),
        basis: Vec::new(),
    };
    let out = propagate(&lifted, &DVector::from_vec(state.amps.clone()), duration)?;
    MultiAtomState::new(state.labels.clone(), out.iter().copied().collect())
}
