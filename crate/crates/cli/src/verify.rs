//! Runs every closed-form versus oracle check over a parameter grid.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use repeater_core::analytic::{is_bell_producing, stage1_coefficients};
use repeater_core::checks::{
    bsm_residual, identity_residuals, observables, periodicity_residual, qed_residual,
    stage1_residual, wootters_residual,
};
use repeater_core::oracle::{full_vs_effective_report, FullVsEffectiveReport};
use repeater_core::{
    bsm_swap, derive_params, large_detuning_check, BellChoice, Complex64, ModelParams,
    RepeaterError, SwapCase, TwoQubitPureState,
};

use crate::error::CliResult;

pub const STATE_TOL: f64 = 1e-10;
pub const PROBABILITY_TOL: f64 = 1e-12;
pub const IDENTITY_TOL: f64 = 1e-12;
pub const PERIODIC_TOL: f64 = 1e-10;
pub const WOOTTERS_TOL: f64 = 1e-12;
pub const VALIDITY_MAX_INFIDELITY: f64 = 0.05;
/// Detuning (in units of g) from which the effective-model check is enforced, for `κ ≥ Γ`.
pub const ENFORCED_DETUNING: f64 = 30.0;
pub const WARN_DETUNING: f64 = 10.0;
pub const VALIDITY_TIMES: [f64; 4] = [2.5, 5.0, 7.5, 10.0];
pub const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyGrid {
    pub params: Vec<ModelParams>,
    /// Stage-one times `gt`.
    pub times: Vec<f64>,
    /// Cavity interaction lengths `g(τ − t)`.
    pub gaps: Vec<f64>,
    pub random_states: usize,
}

impl VerifyGrid {
    /// Δ ∈ {2, 10, 30}, (κ, Γ) ∈ {(10,10), (20,10), (10,20), (0,0)}, gt ∈ {0, 10, ..., 50}.
    pub fn standard(g: f64) -> Self {
        let mut params = Vec::new();
        for delta in [2.0, 10.0, 30.0] {
            for (kappa, gamma) in [(10.0, 10.0), (20.0, 10.0), (10.0, 20.0), (0.0, 0.0)] {
                params.push(
                    ModelParams::new(g, delta * g, kappa * g, gamma * g).expect("valid grid point"),
                );
            }
        }
        Self::around(params)
    }

    /// Standard times and gaps for the given parameter points.
    pub fn around(params: Vec<ModelParams>) -> Self {
        Self {
            params,
            times: (0..=5).map(|k| 10.0 * k as f64).collect(),
            gaps: vec![0.0, 1.0, 7.5],
            random_states: 1000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub evaluations: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidityEntry {
    pub delta: f64,
    pub kappa: f64,
    pub gamma: f64,
    /// `|δ|/g`.
    pub detuning_ratio: f64,
    /// Largest infidelity over [`VALIDITY_TIMES`].
    pub max_infidelity: f64,
    pub enforced: bool,
    pub pass: bool,
    /// Per-initial-state table at the last validity time.
    pub report: FullVsEffectiveReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub failures: usize,
    pub checks: Vec<CheckResult>,
    pub full_vs_effective: Vec<ValidityEntry>,
    pub warnings: Vec<String>,
}

struct Tracker {
    name: &'static str,
    tolerance: f64,
    worst: f64,
    count: usize,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            worst: 0.0,
            count: 0,
        }
    }

    fn add(&mut self, residual: f64) {
        // NaN must fail, so it wins over any finite value.
        self.worst = if residual.is_nan() {
            f64::NAN
        } else {
            self.worst.max(residual)
        };
        self.count += 1;
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            evaluations: self.count,
            max_residual: self.worst,
            tolerance: self.tolerance,
            pass: self.worst <= self.tolerance,
        }
    }
}

fn random_state(rng: &mut ChaCha8Rng) -> TwoQubitPureState {
    let amps: [Complex64; 4] = std::array::from_fn(|_| {
        Complex64::new(
            StandardNormal.sample(&mut *rng),
            StandardNormal.sample(&mut *rng),
        )
    });
    TwoQubitPureState::new([1, 8], amps)
        .and_then(|s| s.normalized())
        .expect("Gaussian amplitudes are almost surely nonzero")
}

pub fn run(grid: &VerifyGrid) -> CliResult<VerifyReport> {
    let mut stage1 = Tracker::new("stage-one state vs propagation", STATE_TOL);
    let mut bsm_p = Tracker::new(
        "Bell-measurement probability vs projection",
        PROBABILITY_TOL,
    );
    let mut bsm_s = Tracker::new("Bell-measurement state vs projection", STATE_TOL);
    let mut qed_s = Tracker::new("cavity joint state vs propagation", STATE_TOL);
    let mut qed_p = Tracker::new(
        "cavity detection probability vs projection",
        PROBABILITY_TOL,
    );
    let mut ident = Tracker::new("route identities", IDENTITY_TOL);
    let mut ceiling = Tracker::new("Bell-producing probability above 1/4", PROBABILITY_TOL);
    let mut bounds = Tracker::new("probability or concurrence outside [0, 1]", 0.0);
    let mut period = Tracker::new("periodicity with balanced losses", PERIODIC_TOL);
    let mut wootters = Tracker::new("Wootters vs pure-state concurrence", WOOTTERS_TOL);
    let mut warnings = Vec::new();
    let mut validity = Vec::new();

    for p in &grid.params {
        let d = derive_params(p)?;
        let g = p.g;
        for &gt in &grid.times {
            let t = gt / g;
            stage1.add(stage1_residual(&d, t)?);
            let (bp, bs) = bsm_residual(&d, t)?;
            bsm_p.add(bp);
            bsm_s.add(bs);
            for &gap in &grid.gaps {
                let tau = t + gap / g;
                let (qs, qp) = qed_residual(&d, t, tau)?;
                qed_s.add(qs);
                qed_p.add(qp);
                ident.add(identity_residuals(&d, t, tau)?.max());
                for v in observables(&d, t, tau)?.into_iter().skip(1) {
                    bounds.add((v - v.clamp(0.0, 1.0)).abs());
                }
            }
            let c = stage1_coefficients(&d, t)?;
            for case in SwapCase::ALL {
                for bell in BellChoice::ALL
                    .into_iter()
                    .filter(|&b| is_bell_producing(case, b))
                {
                    match bsm_swap(case.left, case.right, bell, &c) {
                        Ok(o) => ceiling.add((o.probability - 0.25).max(0.0)),
                        Err(RepeaterError::DegenerateMeasurement { .. }) => ceiling.add(0.0),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
        if let Some(r) = periodicity_residual(&d, 3.0 / g, 20)? {
            period.add(r);
        }

        let ratio = p.complex_detuning().norm() / g;
        if !large_detuning_check(p, WARN_DETUNING) {
            warnings.push(format!(
                "|δ| = {ratio:.3}g is below {WARN_DETUNING}g (Δ={}, κ={}, Γ={}); the effective model is unreliable here",
                p.delta / g,
                p.kappa / g,
                p.gamma / g
            ));
        }
        let mut reports = Vec::with_capacity(VALIDITY_TIMES.len());
        for gt in VALIDITY_TIMES {
            reports.push(full_vs_effective_report(p, gt / g)?);
        }
        let max_infidelity = reports.iter().map(|r| r.max_infidelity).fold(0.0, f64::max);
        if p.gamma > p.kappa {
            warnings.push(format!(
                "Γ > κ (Δ={}, κ={}, Γ={}): the photon-like mode outlives the atom-like one, so the effective model drifts from the post-selected full dynamics at late times",
                p.delta / g,
                p.kappa / g,
                p.gamma / g
            ));
        }
        let enforced = large_detuning_check(p, ENFORCED_DETUNING) && p.kappa >= p.gamma;
        validity.push(ValidityEntry {
            delta: p.delta / g,
            kappa: p.kappa / g,
            gamma: p.gamma / g,
            detuning_ratio: ratio,
            max_infidelity,
            enforced,
            pass: !enforced || max_infidelity <= VALIDITY_MAX_INFIDELITY,
            report: reports.pop().expect("at least one validity time"),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..grid.random_states {
        wootters.add(wootters_residual(&random_state(&mut rng))?);
    }

    let checks: Vec<CheckResult> = [
        stage1, bsm_p, bsm_s, qed_s, qed_p, ident, ceiling, bounds, period, wootters,
    ]
    .into_iter()
    .map(Tracker::finish)
    .collect();
    let failures =
        checks.iter().filter(|c| !c.pass).count() + validity.iter().filter(|v| !v.pass).count();
    Ok(VerifyReport {
        passed: failures == 0,
        failures,
        checks,
        full_vs_effective: validity,
        warnings,
    })
}

/// Human-readable summary.
pub fn render(report: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        s.push_str(&format!(
            "[{}] {}: max {:.3e} (tol {:.0e}, {} evaluations)\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.max_residual,
            c.tolerance,
            c.evaluations
        ));
    }
    s.push_str("full vs effective model (max infidelity over gt ≤ 10):\n");
    for v in &report.full_vs_effective {
        let status = match (v.enforced, v.pass) {
            (false, _) => "info",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        };
        s.push_str(&format!(
            "  [{status}] Δ={} κ={} Γ={} |δ|={:.3}g: {:.3e}\n",
            v.delta, v.kappa, v.gamma, v.detuning_ratio, v.max_infidelity
        ));
    }
    for w in &report.warnings {
        s.push_str(&format!("warning: {w}\n"));
    }
    s.push_str(&format!(
        "verify: {}\n",
        if report.passed {
            "all checks passed".to_string()
        } else {
            format!("{} failure(s)", report.failures)
        }
    ));
    s
}
