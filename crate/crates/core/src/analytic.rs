//! Closed-form evaluation of the repeater protocol.
//!
//! Stage one lets the middle atoms of `|Ψ⟩₁₂⊗|Ψ⟩₃₄` (and of the mirrored
//! half) interact under the dispersive exchange Hamiltonian for a time `t`,
//! then measures them in `|eg⟩` or `|ge⟩`. That leaves atoms (1,4) and
//! (5,8) in one of two single-excitation states, `Ψ` or `Ψ′`. Stage two
//! swaps the entanglement onto (1,8) either by a Bell measurement of atoms
//! (4,5) or by letting (4,5) interact until time `τ` and detecting them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RepeaterError, Result};
use crate::measures::concurrence_pure;
use crate::params::DerivedParams;
use crate::state::{FourAtomState, PairOutcome, Route, SwapCase, SwapOutcome, TwoQubitPureState};

/// Atoms that end up entangled.
pub const END_PAIR: [u8; 2] = [1, 8];
pub const LEFT_PAIR: [u8; 2] = [1, 4];
pub const RIGHT_PAIR: [u8; 2] = [5, 8];
/// Atoms (1,4,5,8) taking part in stage two.
pub const SWAP_ATOMS: [u8; 4] = [1, 4, 5, 8];
pub const LEFT_QUARTET: [u8; 4] = [1, 2, 3, 4];
pub const RIGHT_QUARTET: [u8; 4] = [5, 6, 7, 8];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which stage-one pair state: `Ψ ∝ L₁|eg⟩ + L₅|ge⟩` or `Ψ′ ∝ L₂|eg⟩ + L₆|ge⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairVariant {
    Psi,
    PsiPrime,
}

impl PairVariant {
    /// Middle-atom outcome that heralds this variant.
    pub fn heralded_by(self) -> PairOutcome {
        match self {
            PairVariant::Psi => PairOutcome::Eg,
            PairVariant::PsiPrime => PairOutcome::Ge,
        }
    }
}

/// Bell state used for the swapping measurement on atoms (4,5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellChoice {
    /// `(|ee⟩ + |gg⟩)/√2`
    B,
    /// `(|eg⟩ + |ge⟩)/√2`
    BPrime,
}

impl BellChoice {
    pub const ALL: [BellChoice; 2] = [BellChoice::B, BellChoice::BPrime];

    pub fn as_str(&self) -> &'static str {
        match self {
            BellChoice::B => "b",
            BellChoice::BPrime => "bprime",
        }
    }
}

impl fmt::Display for BellChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BellChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "b" => Ok(BellChoice::B),
            "bprime" => Ok(BellChoice::BPrime),
            _ => Err(format!("unknown Bell state {s:?} (expected b or bprime)")),
        }
    }
}

/// Stage-one amplitudes `L₁..L₆` and their norm at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageOneCoefficients {
    /// `l[0]` is `L₁`, ..., `l[5]` is `L₆`.
    pub l: [Complex64; 6],
    pub n: f64,
    pub t: f64,
    /// Effective coupling the coefficients were evaluated with.
    pub lambda: Complex64,
}

impl StageOneCoefficients {
    /// One-based accessor matching the usual `L₁..L₆` numbering.
    pub fn get(&self, index: usize) -> Complex64 {
        self.l[index - 1]
    }

    /// `(eg, ge)` amplitudes of the pair state heralded for `variant`.
    pub fn pair_amplitudes(&self, variant: PairVariant) -> (Complex64, Complex64) {
        match variant {
            PairVariant::Psi => (self.get(1), self.get(5)),
            PairVariant::PsiPrime => (self.get(2), self.get(6)),
        }
    }
}

fn check_time(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(RepeaterError::InvalidParameter {
            name,
            value,
            reason: "time must be finite and non-negative",
        })
    }
}

/// `e^{−2iλs}`, the relative phase picked up by the exchange interaction over `s`.
fn exchange_phase(lambda: Complex64, s: f64) -> Complex64 {
    (Complex64::new(0.0, -2.0 * s) * lambda).exp()
}

/// Stage-one coefficients after the middle atoms interact for time `t`.
///
/// `L₁ = L₆ = −(i/2)e^{−iλt} sin λt` and `L₂ = L₅ = (1/2)e^{−iλt} cos λt` are
/// evaluated through the equivalent forms `−(1 − e^{−2iλt})/4` and
/// `(1 + e^{−2iλt})/4`, which stay finite for complex `λ` at long times.
pub fn stage1_coefficients(d: &DerivedParams, t: f64) -> Result<StageOneCoefficients> {
    check_time("t", t)?;
    let phase = exchange_phase(d.lambda, t);
    let one = Complex64::new(1.0, 0.0);
    let l1 = -(one - phase) / 4.0;
    let l2 = (one + phase) / 4.0;
    let l3 = Complex64::new(-0.5, 0.0);
    let l4 = -phase / 2.0;
    let l = [l1, l2, l3, l4, l2, l1];
    let n = l.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    Ok(StageOneCoefficients {
        l,
        n,
        t,
        lambda: d.lambda,
    })
}

fn check_quartet(labels: [u8; 4]) -> Result<()> {
    if labels == LEFT_QUARTET || labels == RIGHT_QUARTET {
        Ok(())
    } else {
        Err(RepeaterError::InvalidLabels(format!(
            "stage one acts on atoms (1,2,3,4) or (5,6,7,8), got {labels:?}"
        )))
    }
}

/// Normalized four-atom state produced by stage one.
pub fn stage1_state(d: &DerivedParams, t: f64, labels: [u8; 4]) -> Result<FourAtomState> {
    check_quartet(labels)?;
    let c = stage1_coefficients(d, t)?;
    let mut s = FourAtomState::zero(labels)?;
    for (ket, l) in ["eegg", "egeg", "egge", "geeg", "gege", "ggee"]
        .iter()
        .zip(c.l)
    {
        s.set(ket, l / c.n);
    }
    Ok(s)
}

/// Collapses the outer pair after the middle atoms are found in `outcome`.
///
/// Returns the normalized pair state and the Born probability of `outcome`
/// in the normalized stage-one state.
pub fn collapse_pair(
    c: &StageOneCoefficients,
    outcome: PairOutcome,
    labels: [u8; 2],
) -> Result<(TwoQubitPureState, f64)> {
    let variant = match outcome {
        PairOutcome::Eg => PairVariant::Psi,
        PairOutcome::Ge => PairVariant::PsiPrime,
    };
    let (a, b) = c.pair_amplitudes(variant);
    let weight = a.norm_sqr() + b.norm_sqr();
    if weight <= 0.0 {
        return Err(RepeaterError::DegenerateMeasurement {
            outcome: format!("{} on the middle atoms", outcome.ket()),
        });
    }
    let state = TwoQubitPureState::single_excitation(labels, a, b)?.normalized()?;
    Ok((state, weight / (c.n * c.n)))
}

/// Normalized pair state `Ψ` or `Ψ′` on `labels`.
pub fn pair_state(
    c: &StageOneCoefficients,
    variant: PairVariant,
    labels: [u8; 2],
) -> Result<TwoQubitPureState> {
    collapse_pair(c, variant.heralded_by(), labels).map(|(s, _)| s)
}

fn finish(
    amps: [Complex64; 4],
    probability: f64,
    route: Route,
    case: SwapCase,
    what: &str,
) -> Result<SwapOutcome> {
    if !(probability > 0.0) {
        return Err(RepeaterError::DegenerateMeasurement {
            outcome: format!("{what} for case {case}"),
        });
    }
    let state = TwoQubitPureState::new(END_PAIR, amps)?.normalized()?;
    let concurrence = concurrence_pure(&state)?;
    Ok(SwapOutcome {
        state,
        probability,
        concurrence,
        route,
        case,
    })
}

/// Bell-state measurement of atoms (4,5) on `left(1,4) ⊗ right(5,8)`.
///
/// When the measurement heralds a Bell state on (1,8), the returned state
/// is that exact Bell state and the probability is the closed-form success
/// probability. Otherwise (1,8) is left in a partially entangled `γ` state.
pub fn bsm_swap(
    left: PairVariant,
    right: PairVariant,
    bell: BellChoice,
    c: &StageOneCoefficients,
) -> Result<SwapOutcome> {
    use BellChoice::{BPrime, B};
    use PairVariant::{Psi, PsiPrime};

    let case = SwapCase::new(left, right);
    let route = Route::bell(bell);
    let [l1, l2, _, _, l5, l6] = c.l;
    let norm14 = l1.norm_sqr() + l5.norm_sqr();
    let norm58 = match right {
        Psi => norm14,
        PsiPrime => l2.norm_sqr() + l6.norm_sqr(),
    };
    let sq = |x: Complex64| x.norm_sqr();

    let (amps, probability) = match (left, right, bell) {
        (Psi, Psi, B) => (
            TwoQubitPureState::bell(END_PAIR, B)?.amps,
            sq(l1 * l5) / (norm14 * norm14),
        ),
        (Psi, PsiPrime, BPrime) | (PsiPrime, Psi, BPrime) => (
            TwoQubitPureState::bell(END_PAIR, BPrime)?.amps,
            (sq(l1 * l2) + sq(l5 * l6)) / (2.0 * norm14 * norm14),
        ),
        (PsiPrime, PsiPrime, B) => (
            TwoQubitPureState::bell(END_PAIR, B)?.amps,
            sq(l2 * l6) / (norm14 * norm14),
        ),
        // γ states: two-term projections that are not maximally entangled.
        (Psi, Psi, BPrime) => (
            [ZERO, l1 * l1, l5 * l5, ZERO],
            (sq(l1 * l1) + sq(l5 * l5)) / (2.0 * norm14 * norm58),
        ),
        (Psi, PsiPrime, B) => (
            [l1 * l6, ZERO, ZERO, l2 * l5],
            (sq(l1 * l6) + sq(l2 * l5)) / (2.0 * norm14 * norm58),
        ),
        (PsiPrime, Psi, B) => (
            [l2 * l5, ZERO, ZERO, l1 * l6],
            (sq(l2 * l5) + sq(l1 * l6)) / (2.0 * norm58 * norm14),
        ),
        (PsiPrime, PsiPrime, BPrime) => (
            [ZERO, l2 * l2, l6 * l6, ZERO],
            (sq(l2 * l2) + sq(l6 * l6)) / (2.0 * norm58 * norm58),
        ),
    };
    finish(
        amps,
        probability,
        route,
        case,
        &format!("Bell state {bell}"),
    )
}

/// Unnormalized state of atoms (1,4,5,8) after (4,5) interact from `t` to `tau`.
///
/// Starts from the normalized product `left(1,4) ⊗ right(5,8)`; the norm
/// of the result drops below one when the losses do not balance.
pub fn qed_joint_state(
    case: SwapCase,
    c: &StageOneCoefficients,
    tau: f64,
) -> Result<FourAtomState> {
    check_time("tau", tau)?;
    if tau < c.t {
        return Err(RepeaterError::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "the second interaction cannot end before the first one",
        });
    }
    let (pl, ql) = c.pair_amplitudes(case.left);
    let (pr, qr) = c.pair_amplitudes(case.right);
    let scale = ((pl.norm_sqr() + ql.norm_sqr()) * (pr.norm_sqr() + qr.norm_sqr())).sqrt();

    let phase = exchange_phase(c.lambda, tau - c.t);
    let one = Complex64::new(1.0, 0.0);
    let minus = (phase - one) / 2.0;
    let plus = (phase + one) / 2.0;

    let mut s = FourAtomState::zero(SWAP_ATOMS)?;
    s.set("eegg", pl * pr * minus / scale);
    s.set("egeg", pl * pr * plus / scale);
    s.set("gege", ql * qr * plus / scale);
    s.set("ggee", ql * qr * minus / scale);
    s.set("egge", pl * qr / scale);
    s.set("geeg", phase * ql * pr / scale);
    Ok(s)
}

/// Detects atoms (4,5) of a stage-two joint state in `outcome`.
pub fn qed_collapse(
    joint: &FourAtomState,
    case: SwapCase,
    outcome: PairOutcome,
) -> Result<SwapOutcome> {
    if joint.labels != SWAP_ATOMS {
        return Err(RepeaterError::InvalidLabels(format!(
            "stage-two joint state must be on atoms {SWAP_ATOMS:?}, got {:?}",
            joint.labels
        )));
    }
    let middle = outcome.ket();
    let mut amps = [ZERO; 4];
    for (k, outer) in ["ee", "eg", "ge", "gg"].iter().enumerate() {
        let mut name = String::with_capacity(4);
        name.push_str(&outer[..1]);
        name.push_str(middle);
        name.push_str(&outer[1..]);
        amps[k] = joint.amp(&name);
    }
    let weight: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let total = joint.norm().powi(2);
    let probability = if total > 0.0 { weight / total } else { 0.0 };
    finish(
        amps,
        probability,
        Route::qed(outcome),
        case,
        &format!("{middle} on atoms (4,5)"),
    )
}

/// Full cavity swap: joint evolution to `tau` then detection of `outcome`.
pub fn qed_swap(
    case: SwapCase,
    outcome: PairOutcome,
    c: &StageOneCoefficients,
    tau: f64,
) -> Result<SwapOutcome> {
    let joint = qed_joint_state(case, c, tau)?;
    qed_collapse(&joint, case, outcome)
}

/// Any stage-two route for `case`; `tau` is required for the cavity routes.
pub fn swap(
    case: SwapCase,
    route: Route,
    c: &StageOneCoefficients,
    tau: Option<f64>,
) -> Result<SwapOutcome> {
    let need_tau = || {
        tau.ok_or(RepeaterError::InvalidParameter {
            name: "tau",
            value: f64::NAN,
            reason: "cavity routes need an interaction end time",
        })
    };
    match route {
        Route::BsmB => bsm_swap(case.left, case.right, BellChoice::B, c),
        Route::BsmBPrime => bsm_swap(case.left, case.right, BellChoice::BPrime, c),
        Route::QedEg => qed_swap(case, PairOutcome::Eg, c, need_tau()?),
        Route::QedGe => qed_swap(case, PairOutcome::Ge, c, need_tau()?),
    }
}

/// Whether `bell` heralds a maximally entangled pair for `case`.
pub fn is_bell_producing(case: SwapCase, bell: BellChoice) -> bool {
    (case.left == case.right) == (bell == BellChoice::B)
}
