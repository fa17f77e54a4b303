mod common;

use common::{derived, param_grid, times};
use num_complex::Complex64;
use repeater_core::analytic::{
    collapse_pair, qed_collapse, qed_joint_state, stage1_coefficients, stage1_state, RIGHT_QUARTET,
    SWAP_ATOMS,
};
use repeater_core::checks::{bsm_residuals, qed_residual};
use repeater_core::oracle::{pipeline, postselect, MultiAtomState};
use repeater_core::state::ket;
use repeater_core::{compare_states, PairOutcome, PairVariant, SwapCase};

fn basis(name: &str) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << name.len()];
    v[ket(name)] = Complex64::new(1.0, 0.0);
    v
}

#[test]
fn right_quartet_matches_propagation() {
    for d in param_grid() {
        for t in times(40.0, 8) {
            let analytic = stage1_state(&d, t, RIGHT_QUARTET).unwrap();
            let numeric = pipeline::stage1(&d, t, 5).unwrap().to_four_atom().unwrap();
            assert_eq!(numeric.labels, RIGHT_QUARTET);
            let r = compare_states(&numeric.amps, &analytic.amps).unwrap();
            assert!(r.max_amp_diff < 1e-10, "t = {t}: {r:?}");
        }
    }
}

#[test]
fn middle_detection_probabilities_match_projection() {
    for d in param_grid() {
        for t in times(40.0, 8).into_iter().skip(1) {
            let c = stage1_coefficients(&d, t).unwrap();
            for outcome in [PairOutcome::Eg, PairOutcome::Ge] {
                let (state, p) = collapse_pair(&c, outcome, [1, 4]).unwrap();
                let (numeric, q) = pipeline::collapse(&d, t, 1, outcome).unwrap();
                assert!((p - q).abs() < 1e-12, "t = {t}");
                let numeric = numeric.to_two_qubit().unwrap();
                assert!(
                    compare_states(&numeric.amps, &state.amps)
                        .unwrap()
                        .max_amp_diff
                        < 1e-10
                );
            }
        }
    }
}

#[test]
fn published_bell_normalization_is_exact() {
    // Ψ⊗Ψ′ uses the Ψ normalization on both sides; projection decides.
    for d in param_grid() {
        for t in times(50.0, 20) {
            for r in bsm_residuals(&d, t).unwrap() {
                assert!((r.closed_form - r.projection).abs() < 1e-12, "{r:?}");
            }
        }
    }
}

#[test]
fn cavity_swap_matches_propagation() {
    for d in param_grid() {
        for t in [0.0, 2.5, 10.0, 31.0] {
            for gap in [0.0, 1.0, 7.5, 40.0] {
                let (amp, prob) = qed_residual(&d, t, t + gap).unwrap();
                assert!(amp < 1e-10, "t = {t}, gap = {gap}: {amp:e}");
                assert!(prob < 1e-12, "t = {t}, gap = {gap}: {prob:e}");
            }
        }
    }
}

#[test]
fn postselection_of_analytic_joint_state_reproduces_collapse() {
    for d in param_grid() {
        for t in [1.0, 10.0] {
            let c = stage1_coefficients(&d, t).unwrap();
            for case in SwapCase::ALL {
                let joint = qed_joint_state(case, &c, t + 5.0).unwrap();
                let multi = MultiAtomState::from(&joint);
                for outcome in [PairOutcome::Eg, PairOutcome::Ge] {
                    let closed = qed_collapse(&joint, case, outcome).unwrap();
                    let (rest, p) = postselect(
                        &multi,
                        &[SWAP_ATOMS[1], SWAP_ATOMS[2]],
                        &basis(outcome.ket()),
                    )
                    .unwrap();
                    let rest = rest.to_two_qubit().unwrap();
                    assert!((closed.probability - p).abs() < 1e-12);
                    assert!(
                        compare_states(&rest.amps, &closed.state.amps)
                            .unwrap()
                            .max_amp_diff
                            < 1e-12
                    );
                }
            }
        }
    }
}

#[test]
fn cavity_concurrence_closed_forms() {
    // Ψ⊗Ψ with eg: a = L₁²(φ − 1)/2, b = L₅²(φ + 1)/2, φ = e^{−2iλ(τ−t)}.
    let d = derived(10.0, 20.0, 10.0);
    for t in [1.0, 6.0, 20.0] {
        let c = stage1_coefficients(&d, t).unwrap();
        for tau in [t + 0.5, t + 9.0] {
            let phi = (Complex64::new(0.0, -2.0 * (tau - t)) * d.lambda).exp();
            let one = Complex64::new(1.0, 0.0);
            let (l1, l5) = (c.get(1), c.get(5));
            let a = l1 * l1 * (phi - one) / 2.0;
            let b = l5 * l5 * (phi + one) / 2.0;
            let expected = 2.0 * (a * b).norm() / (a.norm_sqr() + b.norm_sqr());
            let case = SwapCase::new(PairVariant::Psi, PairVariant::Psi);
            let joint = qed_joint_state(case, &c, tau).unwrap();
            let got = qed_collapse(&joint, case, PairOutcome::Eg)
                .unwrap()
                .concurrence;
            assert!((got - expected).abs() < 1e-12);
        }
    }
}

#[test]
fn bsm_concurrence_closed_forms() {
    // γ of Ψ⊗Ψ after B′: 2|L₁L₅|²/(|L₁|⁴ + |L₅|⁴).
    let d = derived(2.0, 10.0, 20.0);
    for t in times(30.0, 12).into_iter().skip(1) {
        let c = stage1_coefficients(&d, t).unwrap();
        let (x, y) = (c.get(1).norm_sqr(), c.get(5).norm_sqr());
        let expected = 2.0 * x * y / (x * x + y * y);
        let got = repeater_core::bsm_swap(
            PairVariant::Psi,
            PairVariant::Psi,
            repeater_core::BellChoice::BPrime,
            &c,
        )
        .unwrap()
        .concurrence;
        assert!((got - expected).abs() < 1e-12);
    }
}
