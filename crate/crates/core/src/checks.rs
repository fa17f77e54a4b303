//! Residuals of the closed forms against the brute-force oracle and of the
//! equalities that hold between different measurement routes.
//!
//! Every function returns a measured discrepancy; callers own the tolerances.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{
    bsm_swap, qed_collapse, qed_joint_state, stage1_coefficients, stage1_state, BellChoice,
    PairVariant, StageOneCoefficients, LEFT_QUARTET, SWAP_ATOMS,
};
use crate::error::{RepeaterError, Result};
use crate::measures::{compare_states, concurrence_pure};
use crate::oracle::{pipeline, postselect, pure_density, wootters_concurrence, MultiAtomState};
use crate::params::DerivedParams;
use crate::state::{ket, PairOutcome, SwapCase, SwapOutcome, TwoQubitPureState};

/// Probability and concurrence of one route, `None` when the outcome cannot occur.
fn observe(r: Result<SwapOutcome>) -> Result<Option<(f64, f64)>> {
    match r {
        Ok(o) => Ok(Some((o.probability, o.concurrence))),
        Err(RepeaterError::DegenerateMeasurement { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Largest pairwise difference among the defined values.
fn spread(values: &[Option<f64>]) -> f64 {
    let v: Vec<f64> = values.iter().flatten().copied().collect();
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    if v.len() < 2 {
        0.0
    } else {
        hi - lo
    }
}

/// Analytic stage-one state versus numerical propagation of the singlet product.
pub fn stage1_residual(d: &DerivedParams, t: f64) -> Result<f64> {
    let analytic = stage1_state(d, t, LEFT_QUARTET)?;
    let numeric = pipeline::stage1(d, t, 1)?.to_four_atom()?;
    Ok(compare_states(&numeric.amps, &analytic.amps)?.max_amp_diff)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BsmResidual {
    pub case: SwapCase,
    pub bell: BellChoice,
    pub closed_form: f64,
    pub projection: f64,
    /// Largest amplitude difference of the (1,8) states; 0 when both outcomes are impossible.
    pub state_diff: f64,
}

/// Closed-form Bell-measurement probabilities and states against projection
/// of numerically collapsed pairs, for all cases and Bell choices.
pub fn bsm_residuals(d: &DerivedParams, t: f64) -> Result<Vec<BsmResidual>> {
    let c = stage1_coefficients(d, t)?;
    let mut out = Vec::with_capacity(8);
    for case in SwapCase::ALL {
        for bell in BellChoice::ALL {
            let analytic = bsm_swap(case.left, case.right, bell, &c);
            let numeric = match pipeline::bsm(d, t, case, bell) {
                Ok(x) => Some(x),
                Err(RepeaterError::DegenerateMeasurement { .. }) => None,
                Err(e) => return Err(e),
            };
            let (closed_form, projection, state_diff) = match (analytic, numeric) {
                (Ok(a), Some((s, p))) => (
                    a.probability,
                    p,
                    compare_states(&s.amps, &a.state.amps)?.max_amp_diff,
                ),
                (Err(RepeaterError::DegenerateMeasurement { .. }), None) => (0.0, 0.0, 0.0),
                (Err(RepeaterError::DegenerateMeasurement { .. }), Some((_, p))) => (0.0, p, 0.0),
                (Ok(a), None) => (a.probability, 0.0, 0.0),
                (Err(e), _) => return Err(e),
            };
            out.push(BsmResidual {
                case,
                bell,
                closed_form,
                projection,
                state_diff,
            });
        }
    }
    Ok(out)
}

/// Largest `|closed form − projection|` probability gap and state difference.
pub fn bsm_residual(d: &DerivedParams, t: f64) -> Result<(f64, f64)> {
    let rows = bsm_residuals(d, t)?;
    let p = rows
        .iter()
        .map(|r| (r.closed_form - r.projection).abs())
        .fold(0.0, f64::max);
    let s = rows.iter().map(|r| r.state_diff).fold(0.0, f64::max);
    Ok((p, s))
}

/// Cavity-swap joint states and collapses against numerical propagation.
///
/// Returns the largest amplitude difference of the normalized joint states
/// (or relative norm gap) and the largest probability gap of the (4,5) detections.
pub fn qed_residual(d: &DerivedParams, t: f64, tau: f64) -> Result<(f64, f64)> {
    let c = stage1_coefficients(d, t)?;
    let (mut amp, mut prob) = (0.0f64, 0.0f64);
    for case in SwapCase::ALL {
        let analytic = qed_joint_state(case, &c, tau)?;
        let numeric = pipeline::qed_joint(d, t, tau, case)?.to_four_atom()?;
        let a = analytic.normalized()?;
        let n = numeric.normalized()?;
        amp = amp.max(compare_states(&n.amps, &a.amps)?.max_amp_diff);
        amp = amp.max((analytic.norm() / numeric.norm() - 1.0).abs());
        for outcome in [PairOutcome::Eg, PairOutcome::Ge] {
            let closed = observe(qed_collapse(&analytic, case, outcome))?;
            let projected = postselect_middle(&MultiAtomState::from(&numeric), outcome)?;
            let p_closed = closed.map_or(0.0, |x| x.0);
            prob = prob.max((p_closed - projected).abs());
        }
    }
    Ok((amp, prob))
}

fn postselect_middle(joint: &MultiAtomState, outcome: PairOutcome) -> Result<f64> {
    let mut ket_amps = vec![Complex64::new(0.0, 0.0); 4];
    ket_amps[ket(outcome.ket())] = Complex64::new(1.0, 0.0);
    match postselect(joint, &[SWAP_ATOMS[1], SWAP_ATOMS[2]], &ket_amps) {
        Ok((_, p)) => Ok(p),
        Err(RepeaterError::DegenerateMeasurement { .. }) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Spreads of the groups of quantities that coincide for every time and parameter set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityResiduals {
    /// Concurrences of the four partially entangled Bell-measurement outcomes.
    pub gamma_concurrence: f64,
    /// Probabilities of the four Bell-producing outcomes.
    pub bell_probability: f64,
    /// Cavity swap: `eg` and `ge` detections for the two mixed cases.
    pub qed_mixed: f64,
    /// Cavity swap: `eg` on `Ψ′⊗Ψ′` against `ge` on `Ψ⊗Ψ`.
    pub qed_eg_ge: f64,
    /// Cavity swap: `ge` on `Ψ′⊗Ψ′` against `eg` on `Ψ⊗Ψ`.
    pub qed_ge_eg: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        [
            self.gamma_concurrence,
            self.bell_probability,
            self.qed_mixed,
            self.qed_eg_ge,
            self.qed_ge_eg,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Bell-measurement probability and concurrence for every case, in
/// [`SwapCase::ALL`] order, for `bell`.
fn bell_row(c: &StageOneCoefficients, bell: BellChoice) -> Result<Vec<Option<(f64, f64)>>> {
    SwapCase::ALL
        .iter()
        .map(|k| observe(bsm_swap(k.left, k.right, bell, c)))
        .collect()
}

pub fn identity_residuals(d: &DerivedParams, t: f64, tau: f64) -> Result<IdentityResiduals> {
    use PairVariant::{Psi, PsiPrime};
    let c = stage1_coefficients(d, t)?;
    let b = bell_row(&c, BellChoice::B)?;
    let bp = bell_row(&c, BellChoice::BPrime)?;
    // Bell-producing: (Ψ,Ψ,B), (Ψ,Ψ′,B′), (Ψ′,Ψ,B′), (Ψ′,Ψ′,B); the rest give γ states.
    let producing = [b[0], bp[1], bp[2], b[3]];
    let gamma = [bp[0], b[1], b[2], bp[3]];

    let qed = |l, r, o| -> Result<Option<f64>> {
        let case = SwapCase::new(l, r);
        let joint = qed_joint_state(case, &c, tau)?;
        Ok(observe(qed_collapse(&joint, case, o))?.map(|x| x.1))
    };
    let (eg, ge) = (PairOutcome::Eg, PairOutcome::Ge);
    let mixed = [
        qed(Psi, PsiPrime, eg)?,
        qed(Psi, PsiPrime, ge)?,
        qed(PsiPrime, Psi, eg)?,
        qed(PsiPrime, Psi, ge)?,
    ];
    Ok(IdentityResiduals {
        gamma_concurrence: spread(&gamma.map(|x| x.map(|v| v.1))),
        bell_probability: spread(&producing.map(|x| Some(x.map_or(0.0, |v| v.0)))),
        qed_mixed: spread(&mixed),
        qed_eg_ge: spread(&[qed(PsiPrime, PsiPrime, eg)?, qed(Psi, Psi, ge)?]),
        qed_ge_eg: spread(&[qed(PsiPrime, PsiPrime, ge)?, qed(Psi, Psi, eg)?]),
    })
}

/// Every probability and concurrence the protocol produces at `(t, τ)`, in a fixed order.
///
/// Impossible outcomes contribute probability 0 and concurrence 0.
pub fn observables(d: &DerivedParams, t: f64, tau: f64) -> Result<Vec<f64>> {
    let c = stage1_coefficients(d, t)?;
    let mut out = Vec::with_capacity(34);
    out.push(c.n);
    for case in SwapCase::ALL {
        for bell in BellChoice::ALL {
            let (p, conc) =
                observe(bsm_swap(case.left, case.right, bell, &c))?.unwrap_or((0.0, 0.0));
            out.extend([p, conc]);
        }
        let joint = qed_joint_state(case, &c, tau)?;
        for outcome in [PairOutcome::Eg, PairOutcome::Ge] {
            let (p, conc) = observe(qed_collapse(&joint, case, outcome))?.unwrap_or((0.0, 0.0));
            out.extend([p, conc]);
        }
    }
    Ok(out)
}

/// `max |f(x) − f(x + T)|` over `samples` points of one period `T`, for every
/// observable, shifting the stage-one time `t` (with `τ − t` held fixed) and
/// separately the cavity time `τ`. `None` unless the losses balance.
pub fn periodicity_residual(d: &DerivedParams, gap: f64, samples: usize) -> Result<Option<f64>> {
    let Some(period) = d.period() else {
        return Ok(None);
    };
    let mut worst = 0.0f64;
    let diff = |a: Vec<f64>, b: Vec<f64>| {
        a.iter()
            .zip(&b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    for k in 0..samples {
        // Half-step offset keeps samples off the exact zeros of L₁, where outcomes are impossible.
        let x = period * (k as f64 + 0.5) / samples as f64;
        worst = worst.max(diff(
            observables(d, x, x + gap)?,
            observables(d, x + period, x + period + gap)?,
        ));
        worst = worst.max(diff(
            observables(d, gap, gap + x)?,
            observables(d, gap, gap + x + period)?,
        ));
    }
    Ok(Some(worst))
}

/// `(C, S)`: concurrence of the `γ` state of `Ψ⊗Ψ` after a `B′` detection and
/// the success probability of the `B` detection on the same input.
pub fn saturating_pair(d: &DerivedParams, t: f64) -> Result<(f64, f64)> {
    let c = stage1_coefficients(d, t)?;
    let conc = observe(bsm_swap(
        PairVariant::Psi,
        PairVariant::Psi,
        BellChoice::BPrime,
        &c,
    ))?
    .map_or(0.0, |x| x.1);
    let prob = observe(bsm_swap(
        PairVariant::Psi,
        PairVariant::Psi,
        BellChoice::B,
        &c,
    ))?
    .map_or(0.0, |x| x.0);
    Ok((conc, prob))
}

/// Earliest grid time after which `C` stays within `tol` of 1 and `S` within
/// `tol` of 1/4 up to `t_max`; `None` if the last grid point is still outside.
pub fn saturation_onset(
    d: &DerivedParams,
    tol: f64,
    t_max: f64,
    steps: usize,
) -> Result<Option<f64>> {
    let mut onset = None;
    for k in 0..=steps {
        let t = t_max * k as f64 / steps as f64;
        let (conc, prob) = saturating_pair(d, t)?;
        let inside = (conc - 1.0).abs() <= tol && (prob - 0.25).abs() <= tol;
        match (inside, onset) {
            (true, None) => onset = Some(t),
            (false, _) => onset = None,
            _ => {}
        }
    }
    Ok(onset)
}

/// `|concurrence_pure − wootters_concurrence|` for one pure state.
pub fn wootters_residual(s: &TwoQubitPureState) -> Result<f64> {
    Ok((concurrence_pure(s)? - wootters_concurrence(&pure_density(s))?).abs())
}
