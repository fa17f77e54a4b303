//! Checks the dispersive two-atom Hamiltonian against the full lossy
//! atoms-plus-cavity dynamics it was reduced from.
//!
//! The full state is propagated in the Schrödinger picture, moved to the
//! interaction picture with the exact diagonal `e^{+iH₀t}` (non-unitary when
//! the rates differ), projected on the cavity vacuum and renormalized.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::expm::expm;
use super::hamiltonian::{
    build_effective, build_full, full_basis_index, validate_rates, CMat, DEFAULT_PHOTON_CUTOFF,
};
use super::postselect::{propagate_pair, MultiAtomState};
use crate::error::{RepeaterError, Result};
use crate::measures::compare_states;
use crate::params::{
    large_detuning_check, DerivedParams, ModelParams, DEFAULT_LARGE_DETUNING_FACTOR,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Settings of the full model that do not enter the effective one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullModelConfig {
    /// Field frequency `ω`; the atomic frequency is `ω + Δ`.
    pub omega: f64,
    pub photon_cutoff: usize,
}

impl Default for FullModelConfig {
    fn default() -> Self {
        Self {
            omega: 0.0,
            photon_cutoff: DEFAULT_PHOTON_CUTOFF,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityRow {
    /// Initial atomic state, e.g. `"eg"` or `"singlet(1,2)⊗singlet(3,4)"`.
    pub initial: String,
    /// `1 − |⟨ψ_eff|ψ_full⟩|²` on normalized interaction-picture states.
    pub infidelity: f64,
    /// Fraction of the Schrödinger-picture norm outside the cavity vacuum.
    pub photon_weight: f64,
    /// Largest amplitude change of the projected state when the cutoff is raised by one.
    pub cutoff_discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullVsEffectiveReport {
    pub params: ModelParams,
    pub t: f64,
    pub photon_cutoff: usize,
    /// `|δ| ≥ 10g`.
    pub large_detuning: bool,
    pub rows: Vec<ValidityRow>,
    pub max_infidelity: f64,
    pub max_cutoff_discrepancy: f64,
}

/// Like `derive_params` but also admits `g = 0`, where `λ = 0`.
fn derive_lenient(p: &ModelParams) -> Result<DerivedParams> {
    validate_rates(p)?;
    let delta_complex = p.complex_detuning();
    if delta_complex == ZERO {
        return Err(RepeaterError::SingularDetuning { delta: p.delta });
    }
    Ok(DerivedParams {
        params: *p,
        delta_complex,
        lambda: Complex64::new(p.g * p.g, 0.0) / delta_complex,
    })
}

struct FullPropagator {
    cutoff: usize,
    /// `e^{+iH₀t} e^{−iHt}` restricted to columns with an empty cavity.
    interaction: CMat,
    /// `e^{−iHt}`.
    schrodinger: CMat,
}

impl FullPropagator {
    fn new(p: &ModelParams, config: FullModelConfig, t: f64) -> Result<Self> {
        let h = build_full(p, config.omega, config.photon_cutoff)?;
        let schrodinger = expm(&h.matrix.map(|x| x * Complex64::new(0.0, -t)));
        let free = h.free_part(p).expect("full Hamiltonian has a free part");
        let frame = CMat::from_diagonal(&DVector::from_iterator(
            free.len(),
            free.iter().map(|e| (Complex64::new(0.0, t) * e).exp()),
        ));
        Ok(Self {
            cutoff: config.photon_cutoff,
            interaction: frame * &schrodinger,
            schrodinger,
        })
    }

    /// Evolves a pair state with the cavity in vacuum; returns the vacuum
    /// component in the interaction picture and the Schrödinger-picture
    /// (vacuum weight, total weight).
    fn evolve(&self, pair: [Complex64; 4]) -> ([Complex64; 4], f64, f64) {
        let dim = self.schrodinger.nrows();
        let mut psi = DVector::from_element(dim, ZERO);
        for (a, amp) in pair.iter().enumerate() {
            psi[full_basis_index(a, 0, self.cutoff)] = *amp;
        }
        let lab = &self.schrodinger * &psi;
        let inter = &self.interaction * &psi;
        let mut vacuum = [ZERO; 4];
        let mut vac_weight = 0.0;
        for (a, v) in vacuum.iter_mut().enumerate() {
            let k = full_basis_index(a, 0, self.cutoff);
            *v = inter[k];
            vac_weight += lab[k].norm_sqr();
        }
        (vacuum, vac_weight, lab.norm_squared())
    }

    /// Applies the full dynamics to atoms at `positions` of a register,
    /// treating every other atom as a spectator.
    fn evolve_register(
        &self,
        state: &MultiAtomState,
        positions: [usize; 2],
    ) -> (Vec<Complex64>, f64) {
        let n = state.labels.len();
        let shift = |p: usize| n - 1 - p;
        let (s0, s1) = (shift(positions[0]), shift(positions[1]));
        let mask = (1usize << s0) | (1usize << s1);
        let place = |rest: usize, a: usize| rest | ((a >> 1) << s0) | ((a & 1) << s1);
        let mut out = vec![ZERO; state.amps.len()];
        let (mut vac, mut total) = (0.0, 0.0);
        for rest in (0..state.amps.len()).filter(|i| i & mask == 0) {
            let pair = [0, 1, 2, 3].map(|a| state.amps[place(rest, a)]);
            if pair.iter().all(|x| *x == ZERO) {
                continue;
            }
            let (evolved, v, t) = self.evolve(pair);
            vac += v;
            total += t;
            for (a, x) in evolved.into_iter().enumerate() {
                out[place(rest, a)] = x;
            }
        }
        let photon_weight = if total > 0.0 { 1.0 - vac / total } else { 0.0 };
        (out, photon_weight)
    }
}

fn initial_states() -> Vec<(String, MultiAtomState, [u8; 2])> {
    let one = Complex64::new(1.0, 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out: Vec<_> = ["ee", "eg", "ge", "gg"]
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let mut amps = vec![ZERO; 4];
            amps[k] = one;
            (
                name.to_string(),
                MultiAtomState::new(vec![2, 3], amps).expect("two-atom register"),
                [2, 3],
            )
        })
        .collect();
    let singlet = |a, b| {
        MultiAtomState::new(
            vec![a, b],
            vec![ZERO, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), ZERO],
        )
        .expect("two-atom register")
    };
    out.push((
        "singlet(1,2)⊗singlet(3,4)".to_string(),
        singlet(1, 2)
            .tensor(&singlet(3, 4))
            .expect("disjoint labels"),
        [2, 3],
    ));
    out
}

fn projected_states(
    p: &ModelParams,
    config: FullModelConfig,
    t: f64,
) -> Result<Vec<(String, Vec<Complex64>, f64, MultiAtomState, [u8; 2])>> {
    let prop = FullPropagator::new(p, config, t)?;
    initial_states()
        .into_iter()
        .map(|(name, state, pair)| {
            let positions = pair.map(|l| {
                state
                    .labels
                    .iter()
                    .position(|&x| x == l)
                    .expect("pair atoms belong to the register")
            });
            let (full, photon_weight) = prop.evolve_register(&state, positions);
            Ok((name, full, photon_weight, state, pair))
        })
        .collect()
}

fn normalize(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter().map(|x| x / n).collect()
    } else {
        v.to_vec()
    }
}

/// Compares full and effective dynamics after time `t` with the default configuration.
pub fn full_vs_effective_report(p: &ModelParams, t: f64) -> Result<FullVsEffectiveReport> {
    full_vs_effective_report_with(p, t, FullModelConfig::default())
}

pub fn full_vs_effective_report_with(
    p: &ModelParams,
    t: f64,
    config: FullModelConfig,
) -> Result<FullVsEffectiveReport> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(RepeaterError::InvalidParameter {
            name: "t",
            value: t,
            reason: "time must be finite and non-negative",
        });
    }
    let d = derive_lenient(p)?;
    let h_eff = build_effective(&d);
    let base = projected_states(p, config, t)?;
    let bigger = projected_states(
        p,
        FullModelConfig {
            photon_cutoff: config.photon_cutoff + 1,
            ..config
        },
        t,
    )?;

    let mut rows = Vec::with_capacity(base.len());
    for ((name, full, photon_weight, state, pair), (_, full_big, ..)) in
        base.into_iter().zip(bigger)
    {
        let eff = propagate_pair(&h_eff, &state, pair, t)?;
        let full_n = normalize(&full);
        let cmp = compare_states(&normalize(&eff.amps), &full_n)?;
        let big = compare_states(&full_n, &normalize(&full_big))?;
        rows.push(ValidityRow {
            initial: name,
            infidelity: cmp.infidelity.max(0.0),
            photon_weight,
            cutoff_discrepancy: big.max_amp_diff,
        });
    }
    let max_infidelity = rows.iter().map(|r| r.infidelity).fold(0.0, f64::max);
    let max_cutoff_discrepancy = rows
        .iter()
        .map(|r| r.cutoff_discrepancy)
        .fold(0.0, f64::max);
    Ok(FullVsEffectiveReport {
        params: *p,
        t,
        photon_cutoff: config.photon_cutoff,
        large_detuning: p.g == 0.0 || large_detuning_check(p, DEFAULT_LARGE_DETUNING_FACTOR),
        rows,
        max_infidelity,
        max_cutoff_discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_coupling_gives_zero_infidelity() {
        let p = ModelParams {
            g: 0.0,
            delta: 5.0,
            kappa: 2.0,
            gamma: 1.0,
        };
        let r = full_vs_effective_report(&p, 3.0).unwrap();
        assert!(r.max_infidelity < 1e-14, "{r:?}");
        assert_eq!(r.rows.len(), 5);
        assert!(r.rows.iter().all(|row| row.photon_weight == 0.0));
    }

    #[test]
    fn result_does_not_depend_on_field_frequency() {
        let p = ModelParams::with_unit_coupling(10.0, 3.0, 1.0).unwrap();
        let a = full_vs_effective_report_with(&p, 4.0, FullModelConfig::default()).unwrap();
        let b = full_vs_effective_report_with(
            &p,
            4.0,
            FullModelConfig {
                omega: 50.0,
                photon_cutoff: 3,
            },
        )
        .unwrap();
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert!((x.infidelity - y.infidelity).abs() < 1e-9);
        }
    }

    #[test]
    fn cutoff_beyond_two_photons_changes_nothing() {
        let p = ModelParams::with_unit_coupling(5.0, 10.0, 10.0).unwrap();
        let r = full_vs_effective_report(&p, 6.0).unwrap();
        assert!(r.max_cutoff_discrepancy < 1e-10, "{r:?}");
    }

    #[test]
    fn ground_state_is_exact() {
        let p = ModelParams::with_unit_coupling(3.0, 10.0, 10.0).unwrap();
        let r = full_vs_effective_report(&p, 10.0).unwrap();
        let gg = r.rows.iter().find(|row| row.initial == "gg").unwrap();
        assert!(gg.infidelity < 1e-14);
        assert!(!r.large_detuning);
    }

    #[test]
    fn slower_photon_mode_breaks_the_reduction() {
        // Γ > κ: the photon-like mode decays more slowly than the atom-like one.
        let ok = ModelParams::with_unit_coupling(30.0, 20.0, 10.0).unwrap();
        let bad = ModelParams::with_unit_coupling(30.0, 10.0, 20.0).unwrap();
        assert!(full_vs_effective_report(&ok, 10.0).unwrap().max_infidelity < 1e-4);
        assert!(full_vs_effective_report(&bad, 0.5).unwrap().max_infidelity < 1e-3);
        assert!(full_vs_effective_report(&bad, 10.0).unwrap().max_infidelity > 0.1);
    }

    #[test]
    fn negative_time_rejected() {
        let p = ModelParams::with_unit_coupling(3.0, 10.0, 10.0).unwrap();
        assert!(full_vs_effective_report(&p, -1.0).is_err());
    }
}
