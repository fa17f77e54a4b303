//! The whole protocol rebuilt from propagation and projection alone.
//!
//! Nothing here uses the closed-form coefficients: stage one propagates the
//! singlet product numerically, every measurement is a generic
//! post-selection, and stage two propagates the product of the collapsed
//! pairs.

use num_complex::Complex64;

use super::hamiltonian::build_effective;
use super::postselect::{postselect, propagate_pair, MultiAtomState};
use crate::analytic::{BellChoice, PairVariant};
use crate::error::Result;
use crate::params::DerivedParams;
use crate::state::{ket, PairOutcome, SwapCase, TwoQubitPureState};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn basis(name: &str) -> Vec<Complex64> {
    let mut v = vec![ZERO; 1 << name.len()];
    v[ket(name)] = Complex64::new(1.0, 0.0);
    v
}

fn bell_ket(bell: BellChoice) -> Vec<Complex64> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    match bell {
        BellChoice::B => vec![h, ZERO, ZERO, h],
        BellChoice::BPrime => vec![ZERO, h, h, ZERO],
    }
}

/// `(|eg⟩ − |ge⟩)/√2` on atoms `(a, b)`.
pub fn singlet(a: u8, b: u8) -> MultiAtomState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    MultiAtomState::new(
        vec![a, b],
        vec![ZERO, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), ZERO],
    )
    .expect("two distinct labels")
}

/// Four-atom register `first..first+3` after the middle atoms interact for `t`, normalized.
pub fn stage1(d: &DerivedParams, t: f64, first: u8) -> Result<MultiAtomState> {
    let initial = singlet(first, first + 1).tensor(&singlet(first + 2, first + 3))?;
    let h = build_effective(d);
    propagate_pair(&h, &initial, [first + 1, first + 2], t)?.normalized()
}

/// Outer pair of a stage-one register after the middle atoms are found in `outcome`.
pub fn collapse(
    d: &DerivedParams,
    t: f64,
    first: u8,
    outcome: PairOutcome,
) -> Result<(MultiAtomState, f64)> {
    let s = stage1(d, t, first)?;
    postselect(&s, &[first + 1, first + 2], &basis(outcome.ket()))
}

/// Normalized `left(1,4) ⊗ right(5,8)` built from numerically collapsed pairs.
pub fn swap_input(d: &DerivedParams, t: f64, case: SwapCase) -> Result<MultiAtomState> {
    let herald = |v: PairVariant| match v {
        PairVariant::Psi => PairOutcome::Eg,
        PairVariant::PsiPrime => PairOutcome::Ge,
    };
    let (left, _) = collapse(d, t, 1, herald(case.left))?;
    let (right, _) = collapse(d, t, 5, herald(case.right))?;
    left.tensor(&right)
}

/// Bell measurement of atoms (4,5); returns the (1,8) state and its probability.
pub fn bsm(
    d: &DerivedParams,
    t: f64,
    case: SwapCase,
    bell: BellChoice,
) -> Result<(TwoQubitPureState, f64)> {
    let input = swap_input(d, t, case)?;
    let (rest, p) = postselect(&input, &[4, 5], &bell_ket(bell))?;
    Ok((rest.to_two_qubit()?, p))
}

/// Unnormalized (1,4,5,8) state after atoms (4,5) interact from `t` to `tau`.
pub fn qed_joint(d: &DerivedParams, t: f64, tau: f64, case: SwapCase) -> Result<MultiAtomState> {
    let input = swap_input(d, t, case)?;
    propagate_pair(&build_effective(d), &input, [4, 5], tau - t)
}

/// Cavity swap followed by detection of atoms (4,5) in `outcome`.
pub fn qed(
    d: &DerivedParams,
    t: f64,
    tau: f64,
    case: SwapCase,
    outcome: PairOutcome,
) -> Result<(TwoQubitPureState, f64)> {
    let joint = qed_joint(d, t, tau, case)?;
    let (rest, p) = postselect(&joint, &[4, 5], &basis(outcome.ket()))?;
    Ok((rest.to_two_qubit()?, p))
}
