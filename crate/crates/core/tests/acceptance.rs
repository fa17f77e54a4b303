//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use common::{derived, param_grid, random_states, times, SEED};
use repeater_core::analytic::{qed_collapse, qed_joint_state, stage1_coefficients};
use repeater_core::checks::{
    bsm_residual, identity_residuals, periodicity_residual, saturating_pair, saturation_onset,
    stage1_residual, wootters_residual,
};
use repeater_core::oracle::{full_vs_effective_report, pipeline};
use repeater_core::{concurrence_pure, ModelParams, PairOutcome, SwapCase};

const STAGE1_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-12;
const CEILING_TOL: f64 = 1e-6;
const PERIODIC_TOL: f64 = 1e-10;
const SATURATION_TOL: f64 = 1e-3;
const WOOTTERS_TOL: f64 = 1e-12;
const WOOTTERS_SAMPLES: usize = 1000;
const VALIDITY_MAX_INFIDELITY: f64 = 0.05;
const BSM_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn c1_stage1_equivalence() -> Outcome {
    let ts = times(50.0, 16);
    let mut worst = 0.0f64;
    let mut points = 0;
    for d in param_grid() {
        for &t in &ts {
            worst = worst.max(stage1_residual(&d, t).unwrap());
            points += 1;
        }
    }
    outcome(
        points >= 200 && worst <= STAGE1_TOL,
        format!("{points} points, max amplitude difference {worst:.3e} (tol {STAGE1_TOL:e})"),
    )
}

fn c2_identities() -> Outcome {
    let mut worst = 0.0f64;
    for d in param_grid() {
        for t in times(50.0, 25) {
            for gap in [0.0, 0.9, 4.0, 17.0] {
                worst = worst.max(identity_residuals(&d, t, t + gap).unwrap().max());
            }
        }
    }
    outcome(
        worst <= IDENTITY_TOL,
        format!("max spread {worst:.3e} (tol {IDENTITY_TOL:e})"),
    )
}

fn c3_probability_ceiling() -> Outcome {
    let d = derived(10.0, 10.0, 10.0);
    let lambda = d.lambda.re;
    let period = d.period().unwrap();
    let steps = 10_000;
    let t_max = 100.0;
    let (mut best, mut at) = (0.0, 0.0);
    for t in times(t_max, steps) {
        let (_, s) = saturating_pair(&d, t).unwrap();
        if s > best {
            (best, at) = (s, t);
        }
    }
    let resolution = t_max / steps as f64;
    let target = PI / (4.0 * lambda);
    let offset = (at - target).rem_euclid(period);
    let off_peak = offset.min(period - offset);
    outcome(
        (best - 0.25).abs() <= CEILING_TOL && off_peak <= resolution,
        format!(
            "max S = {best:.9} at gt = {at:.2}; λt mod π = {:.6} (π/4 = {:.6}), grid step {resolution}",
            (lambda * at).rem_euclid(PI),
            PI / 4.0
        ),
    )
}

fn c4_periodicity() -> Outcome {
    let mut worst = 0.0f64;
    let mut report = Vec::new();
    for (delta, rate) in [(10.0, 10.0), (10.0, 0.0), (2.0, 10.0), (30.0, 20.0)] {
        let d = derived(delta, rate, rate);
        let r = periodicity_residual(&d, 3.0, 40).unwrap().unwrap();
        report.push(format!("Δ={delta}: T={:.4}", d.period().unwrap()));
        worst = worst.max(r);
    }
    outcome(
        worst <= PERIODIC_TOL,
        format!(
            "{}; max |f(t)−f(t+T)| {worst:.3e} (tol {PERIODIC_TOL:e})",
            report.join(", ")
        ),
    )
}

fn c5_saturation() -> Outcome {
    let d = derived(10.0, 20.0, 10.0);
    let t_max = 400.0;
    let onset = saturation_onset(&d, SATURATION_TOL, t_max, 40_000).unwrap();
    let (c, s) = saturating_pair(&d, t_max).unwrap();
    match onset {
        Some(t0) => outcome(
            t0 < t_max,
            format!("onset gt = {t0:.2}; at gt = {t_max}: C = {c:.12}, S = {s:.12}"),
        ),
        None => outcome(
            false,
            format!("no onset before gt = {t_max}; C = {c}, S = {s}"),
        ),
    }
}

fn c6_qed_boundary() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for d in param_grid() {
        for t in [0.5, 3.0, 10.0, 27.0] {
            let c = stage1_coefficients(&d, t).unwrap();
            for case in SwapCase::ALL {
                let joint = qed_joint_state(case, &c, t).unwrap();
                let analytic = qed_collapse(&joint, case, PairOutcome::Eg)
                    .unwrap()
                    .concurrence;
                let (state, _) = pipeline::qed(&d, t, t, case, PairOutcome::Eg).unwrap();
                let oracle = concurrence_pure(&state).unwrap();
                worst = worst.max(analytic.abs()).max(oracle.abs());
                checked += 1;
            }
        }
    }
    outcome(
        worst == 0.0,
        format!("{checked} collapses, max concurrence {worst:e}"),
    )
}

fn c7_wootters() -> Outcome {
    let worst = random_states(WOOTTERS_SAMPLES, SEED)
        .iter()
        .map(|s| wootters_residual(s).unwrap())
        .fold(0.0, f64::max);
    outcome(
        worst <= WOOTTERS_TOL,
        format!("{WOOTTERS_SAMPLES} states (seed {SEED:#x}), max difference {worst:.3e} (tol {WOOTTERS_TOL:e})"),
    )
}

fn c8_large_detuning() -> Outcome {
    let worst = |delta: f64| {
        let p = ModelParams::with_unit_coupling(delta, 10.0, 10.0).unwrap();
        (1..=10)
            .map(|t| {
                full_vs_effective_report(&p, t as f64)
                    .unwrap()
                    .max_infidelity
            })
            .fold(0.0, f64::max)
    };
    let (far, near) = (worst(30.0), worst(3.0));
    outcome(
        far <= VALIDITY_MAX_INFIDELITY && far < near,
        format!("max infidelity over gt ≤ 10: |δ|=30g {far:.3e}, |δ|=3g {near:.3e} (bound {VALIDITY_MAX_INFIDELITY})"),
    )
}

fn c9_bsm_projection() -> Outcome {
    let (mut prob, mut state) = (0.0f64, 0.0f64);
    for d in param_grid() {
        for t in times(50.0, 10) {
            let (p, s) = bsm_residual(&d, t).unwrap();
            prob = prob.max(p);
            state = state.max(s);
        }
    }
    outcome(
        prob <= BSM_TOL && state <= STAGE1_TOL,
        format!(
            "max probability gap {prob:.3e} (tol {BSM_TOL:e}), max state difference {state:.3e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        (
            "analytic stage one matches propagation",
            c1_stage1_equivalence,
        ),
        ("route identities", c2_identities),
        ("success-probability ceiling", c3_probability_ceiling),
        ("periodicity with balanced losses", c4_periodicity),
        ("dissipative saturation", c5_saturation),
        ("cavity swap at tau = t", c6_qed_boundary),
        ("Wootters concurrence", c7_wootters),
        ("large-detuning validity", c8_large_detuning),
        ("Bell-measurement projection", c9_bsm_projection),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {} {name}: {} ({:.2?})",
            k + 1,
            o.detail,
            t0.elapsed()
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2?}",
        criteria.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
