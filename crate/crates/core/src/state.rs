//! Pure-state containers for labeled two-level atoms.
//!
//! Basis convention: each atom is `|e⟩` (bit 0) or `|g⟩` (bit 1), atoms are
//! listed in ascending label order and the leftmost atom is the most
//! significant bit. For two atoms the order is `|ee⟩, |eg⟩, |ge⟩, |gg⟩`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{BellChoice, PairVariant};
use crate::error::{RepeaterError, Result};

/// Tolerance used by `is_normalized` checks on protocol states.
pub const NORM_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Excited,
    Ground,
}

impl Level {
    fn bit(self) -> usize {
        match self {
            Level::Excited => 0,
            Level::Ground => 1,
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'e' => Some(Level::Excited),
            'g' => Some(Level::Ground),
            _ => None,
        }
    }
}

/// Index of a product ket in the `e < g`, left-most-significant ordering.
pub fn ket_index(levels: &[Level]) -> usize {
    levels.iter().fold(0, |acc, l| (acc << 1) | l.bit())
}

/// Index of a ket written as a string of `e`/`g` characters, e.g. `"egge"`.
///
/// Panics on characters other than `e` and `g`; intended for literals.
pub fn ket(spec: &str) -> usize {
    let levels: Vec<Level> = spec
        .chars()
        .map(|c| Level::from_char(c).unwrap_or_else(|| panic!("bad ket character {c:?}")))
        .collect();
    ket_index(&levels)
}

/// Name of basis ket `index` for `atoms` atoms, e.g. `ket_name(1, 2) == "eg"`.
pub fn ket_name(index: usize, atoms: usize) -> String {
    (0..atoms)
        .map(|k| {
            if (index >> (atoms - 1 - k)) & 1 == 0 {
                'e'
            } else {
                'g'
            }
        })
        .collect()
}

pub(crate) fn norm_of(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn check_labels(labels: &[u8]) -> Result<()> {
    if labels.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(RepeaterError::InvalidLabels(format!(
            "labels {labels:?} must be strictly ascending"
        )))
    }
}

/// Pure state of two labeled atoms over `|ee⟩, |eg⟩, |ge⟩, |gg⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitPureState {
    pub labels: [u8; 2],
    pub amps: [Complex64; 4],
}

impl TwoQubitPureState {
    pub fn new(labels: [u8; 2], amps: [Complex64; 4]) -> Result<Self> {
        check_labels(&labels)?;
        Ok(Self { labels, amps })
    }

    /// `a|eg⟩ + b|ge⟩`, unnormalized.
    pub fn single_excitation(labels: [u8; 2], a: Complex64, b: Complex64) -> Result<Self> {
        Self::new(labels, [ZERO, a, b, ZERO])
    }

    /// Bell state `(|ee⟩+|gg⟩)/√2` or `(|eg⟩+|ge⟩)/√2`.
    pub fn bell(labels: [u8; 2], choice: BellChoice) -> Result<Self> {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let amps = match choice {
            BellChoice::B => [h, ZERO, ZERO, h],
            BellChoice::BPrime => [ZERO, h, h, ZERO],
        };
        Self::new(labels, amps)
    }

    pub fn amp(&self, spec: &str) -> Complex64 {
        self.amps[ket(spec)]
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Returns the state scaled to unit norm; a zero vector is an error.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(RepeaterError::Unnormalized { norm: n });
        }
        let mut amps = self.amps;
        amps.iter_mut().for_each(|a| *a /= n);
        Ok(Self {
            labels: self.labels,
            amps,
        })
    }
}

/// Pure state of four labeled atoms over the sixteen product kets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourAtomState {
    pub labels: [u8; 4],
    pub amps: [Complex64; 16],
}

impl FourAtomState {
    pub fn new(labels: [u8; 4], amps: [Complex64; 16]) -> Result<Self> {
        check_labels(&labels)?;
        Ok(Self { labels, amps })
    }

    pub fn zero(labels: [u8; 4]) -> Result<Self> {
        Self::new(labels, [ZERO; 16])
    }

    /// Tensor product `left ⊗ right`; labels are concatenated.
    pub fn product(left: &TwoQubitPureState, right: &TwoQubitPureState) -> Result<Self> {
        let labels = [
            left.labels[0],
            left.labels[1],
            right.labels[0],
            right.labels[1],
        ];
        let mut amps = [ZERO; 16];
        for (i, l) in left.amps.iter().enumerate() {
            for (j, r) in right.amps.iter().enumerate() {
                amps[(i << 2) | j] = l * r;
            }
        }
        Self::new(labels, amps)
    }

    pub fn amp(&self, spec: &str) -> Complex64 {
        self.amps[ket(spec)]
    }

    pub fn set(&mut self, spec: &str, value: Complex64) {
        self.amps[ket(spec)] = value;
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(RepeaterError::Unnormalized { norm: n });
        }
        let mut amps = self.amps;
        amps.iter_mut().for_each(|a| *a /= n);
        Ok(Self {
            labels: self.labels,
            amps,
        })
    }

    /// Kets with a nonzero amplitude, by name.
    pub fn support(&self) -> Vec<String> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != ZERO)
            .map(|(i, _)| ket_name(i, 4))
            .collect()
    }
}

/// Outcome of measuring an atom pair in the single-excitation sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairOutcome {
    /// `|eg⟩`
    Eg,
    /// `|ge⟩`
    Ge,
}

impl PairOutcome {
    pub const ALL: [PairOutcome; 2] = [PairOutcome::Eg, PairOutcome::Ge];

    pub fn ket(self) -> &'static str {
        match self {
            PairOutcome::Eg => "eg",
            PairOutcome::Ge => "ge",
        }
    }
}

/// Which of the four stage-two input products `left(1,4) ⊗ right(5,8)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwapCase {
    pub left: PairVariant,
    pub right: PairVariant,
}

impl SwapCase {
    pub const ALL: [SwapCase; 4] = [
        SwapCase::new(PairVariant::Psi, PairVariant::Psi),
        SwapCase::new(PairVariant::Psi, PairVariant::PsiPrime),
        SwapCase::new(PairVariant::PsiPrime, PairVariant::Psi),
        SwapCase::new(PairVariant::PsiPrime, PairVariant::PsiPrime),
    ];

    pub const fn new(left: PairVariant, right: PairVariant) -> Self {
        Self { left, right }
    }

    pub fn as_str(&self) -> &'static str {
        use PairVariant::*;
        match (self.left, self.right) {
            (Psi, Psi) => "psi-psi",
            (Psi, PsiPrime) => "psi-psiprime",
            (PsiPrime, Psi) => "psiprime-psi",
            (PsiPrime, PsiPrime) => "psiprime-psiprime",
        }
    }
}

impl fmt::Display for SwapCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SwapCase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SwapCase::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                format!("unknown case {s:?} (expected psi-psi, psi-psiprime, psiprime-psi or psiprime-psiprime)")
            })
    }
}

/// How entanglement was swapped onto the end pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    /// Bell measurement of atoms (4,5) projecting on `B`.
    BsmB,
    /// Bell measurement of atoms (4,5) projecting on `B′`.
    BsmBPrime,
    /// Cavity interaction of atoms (4,5) followed by detection of `|eg⟩`.
    QedEg,
    /// Cavity interaction of atoms (4,5) followed by detection of `|ge⟩`.
    QedGe,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::BsmB, Route::BsmBPrime, Route::QedEg, Route::QedGe];

    pub fn as_str(&self) -> &'static str {
        match self {
            Route::BsmB => "bsm-b",
            Route::BsmBPrime => "bsm-bprime",
            Route::QedEg => "qed-eg",
            Route::QedGe => "qed-ge",
        }
    }

    pub fn bell(bell: BellChoice) -> Self {
        match bell {
            BellChoice::B => Route::BsmB,
            BellChoice::BPrime => Route::BsmBPrime,
        }
    }

    pub fn qed(outcome: PairOutcome) -> Self {
        match outcome {
            PairOutcome::Eg => Route::QedEg,
            PairOutcome::Ge => Route::QedGe,
        }
    }

    pub fn is_qed(&self) -> bool {
        matches!(self, Route::QedEg | Route::QedGe)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Route::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| {
                format!("unknown route {s:?} (expected bsm-b, bsm-bprime, qed-eg or qed-ge)")
            })
    }
}

/// Post-measurement state of atoms (1,8) together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwapOutcome {
    pub state: TwoQubitPureState,
    /// Born probability of the measurement outcome that produced `state`.
    pub probability: f64,
    pub concurrence: f64,
    pub route: Route,
    pub case: SwapCase,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_order_is_e_before_g_left_major() {
        assert_eq!(ket("ee"), 0);
        assert_eq!(ket("eg"), 1);
        assert_eq!(ket("ge"), 2);
        assert_eq!(ket("gg"), 3);
        assert_eq!(ket("eegg"), 3);
        assert_eq!(ket("geeg"), 0b1001);
        assert_eq!(ket_name(0b1001, 4), "geeg");
        for i in 0..16 {
            assert_eq!(ket(&ket_name(i, 4)), i);
        }
    }

    #[test]
    fn product_places_amplitudes_in_tensor_order() {
        let one = Complex64::new(1.0, 0.0);
        let left = TwoQubitPureState::single_excitation([1, 4], one, ZERO).unwrap();
        let right = TwoQubitPureState::single_excitation([5, 8], ZERO, one).unwrap();
        let p = FourAtomState::product(&left, &right).unwrap();
        assert_eq!(p.labels, [1, 4, 5, 8]);
        assert_eq!(p.support(), vec!["egge".to_string()]);
    }

    #[test]
    fn normalization() {
        let s = TwoQubitPureState::single_excitation(
            [1, 8],
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, 4.0),
        )
        .unwrap();
        let n = s.normalized().unwrap();
        assert!((n.norm() - 1.0).abs() < 1e-12);
        assert!(n.is_normalized(1e-12));
        let zero = TwoQubitPureState::single_excitation([1, 8], ZERO, ZERO).unwrap();
        assert!(zero.normalized().is_err());
    }

    #[test]
    fn labels_must_ascend() {
        assert!(TwoQubitPureState::new([4, 1], [ZERO; 4]).is_err());
        assert!(FourAtomState::zero([1, 4, 4, 8]).is_err());
    }

    #[test]
    fn tags_round_trip_through_strings() {
        for c in SwapCase::ALL {
            assert_eq!(c.as_str().parse::<SwapCase>().unwrap(), c);
        }
        for r in Route::ALL {
            assert_eq!(r.to_string().parse::<Route>().unwrap(), r);
        }
        assert!("bsm-c".parse::<Route>().is_err());
    }
}
