#![allow(dead_code)]

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use repeater_core::{derive_params, DerivedParams, ModelParams, TwoQubitPureState};

pub const DETUNINGS: [f64; 3] = [2.0, 10.0, 30.0];
pub const LOSS_PAIRS: [(f64, f64); 4] = [(10.0, 10.0), (20.0, 10.0), (10.0, 20.0), (0.0, 0.0)];
/// Seed of every randomized check.
pub const SEED: u64 = 0x5eed_2024;

pub fn derived(delta: f64, kappa: f64, gamma: f64) -> DerivedParams {
    derive_params(&ModelParams::with_unit_coupling(delta, kappa, gamma).unwrap()).unwrap()
}

/// All detuning and loss combinations.
pub fn param_grid() -> Vec<DerivedParams> {
    DETUNINGS
        .iter()
        .flat_map(|&delta| LOSS_PAIRS.iter().map(move |&(k, g)| derived(delta, k, g)))
        .collect()
}

/// `steps + 1` evenly spaced times in `[0, t_max]`.
pub fn times(t_max: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|k| t_max * k as f64 / steps as f64)
        .collect()
}

/// Haar-distributed pure two-qubit states from a seeded generator.
pub fn random_states(count: usize, seed: u64) -> Vec<TwoQubitPureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let amps: [Complex64; 4] = std::array::from_fn(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            });
            TwoQubitPureState::new([1, 8], amps)
                .unwrap()
                .normalized()
                .unwrap()
        })
        .collect()
}
