//! Physical parameters of the atom–cavity interaction and the complex
//! quantities derived from them.
//!
//! All rates and detunings are expressed in units of the coupling `g`
//! (conventionally `g = 1`) and all times in units of `1/g`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RepeaterError, Result};

/// Default ratio `|δ|/g` above which the dispersive reduction is trusted.
pub const DEFAULT_LARGE_DETUNING_FACTOR: f64 = 10.0;

/// Rates of the dissipative Jaynes–Cummings model shared by both interacting atoms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Atom–field coupling strength.
    pub g: f64,
    /// Detuning `Δ = ω_atom − ω_field`.
    pub delta: f64,
    /// Cavity photon-leakage rate.
    pub kappa: f64,
    /// Atomic spontaneous-emission rate.
    pub gamma: f64,
}

impl ModelParams {
    /// Builds a validated parameter set.
    pub fn new(g: f64, delta: f64, kappa: f64, gamma: f64) -> Result<Self> {
        let p = Self {
            g,
            delta,
            kappa,
            gamma,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters in units where `g = 1`.
    pub fn with_unit_coupling(delta: f64, kappa: f64, gamma: f64) -> Result<Self> {
        Self::new(1.0, delta, kappa, gamma)
    }

    pub fn validate(&self) -> Result<()> {
        let check_finite = |name, value: f64| {
            if value.is_finite() {
                Ok(())
            } else {
                Err(RepeaterError::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite",
                })
            }
        };
        check_finite("g", self.g)?;
        check_finite("delta", self.delta)?;
        check_finite("kappa", self.kappa)?;
        check_finite("gamma", self.gamma)?;
        if self.g <= 0.0 {
            return Err(RepeaterError::InvalidParameter {
                name: "g",
                value: self.g,
                reason: "coupling must be positive",
            });
        }
        if self.kappa < 0.0 {
            return Err(RepeaterError::InvalidParameter {
                name: "kappa",
                value: self.kappa,
                reason: "decay rate must be non-negative",
            });
        }
        if self.gamma < 0.0 {
            return Err(RepeaterError::InvalidParameter {
                name: "gamma",
                value: self.gamma,
                reason: "decay rate must be non-negative",
            });
        }
        Ok(())
    }

    /// Complex detuning `δ = Δ + i(κ − Γ)/2`.
    pub fn complex_detuning(&self) -> Complex64 {
        Complex64::new(self.delta, 0.5 * (self.kappa - self.gamma))
    }
}

/// Complex detuning and effective exchange coupling of the dispersive model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub params: ModelParams,
    /// `δ = Δ + i(κ − Γ)/2`.
    pub delta_complex: Complex64,
    /// `λ = g²/δ`.
    pub lambda: Complex64,
}

impl DerivedParams {
    /// True when the two loss rates balance and `λ` is real.
    pub fn is_balanced(&self) -> bool {
        self.delta_complex.im == 0.0
    }

    /// Oscillation period `π/λ` of every protocol quantity when `λ` is real.
    pub fn period(&self) -> Option<f64> {
        self.is_balanced()
            .then(|| std::f64::consts::PI / self.lambda.re.abs())
    }
}

/// Computes `δ` and `λ`, rejecting the singular point `δ = 0`.
pub fn derive_params(p: &ModelParams) -> Result<DerivedParams> {
    p.validate()?;
    let delta_complex = p.complex_detuning();
    if delta_complex == Complex64::new(0.0, 0.0) {
        return Err(RepeaterError::SingularDetuning { delta: p.delta });
    }
    let lambda = Complex64::new(p.g * p.g, 0.0) / delta_complex;
    Ok(DerivedParams {
        params: *p,
        delta_complex,
        lambda,
    })
}

/// Whether `|δ| ≥ factor · g`, the regime where the effective Hamiltonian holds.
///
/// Only advisory: callers use it to warn, never to refuse a computation.
pub fn large_detuning_check(p: &ModelParams, factor: f64) -> bool {
    assert!(factor > 0.0, "large-detuning factor must be positive");
    p.complex_detuning().norm() >= factor * p.g
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn balanced_rates_give_real_coupling() {
        let d = derive_params(&ModelParams::with_unit_coupling(10.0, 7.0, 7.0).unwrap()).unwrap();
        assert_eq!(d.delta_complex, Complex64::new(10.0, 0.0));
        assert_abs_diff_eq!(d.lambda.re, 0.1, epsilon = 1e-16);
        assert_eq!(d.lambda.im, 0.0);
        assert!(d.is_balanced());
        assert_abs_diff_eq!(
            d.period().unwrap(),
            10.0 * std::f64::consts::PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn dissipative_coupling_matches_hand_division() {
        // 1/(10+5i) = (10-5i)/125
        let d = derive_params(&ModelParams::with_unit_coupling(10.0, 20.0, 10.0).unwrap()).unwrap();
        assert_eq!(d.delta_complex, Complex64::new(10.0, 5.0));
        assert_abs_diff_eq!(d.lambda.re, 0.08, epsilon = 1e-15);
        assert_abs_diff_eq!(d.lambda.im, -0.04, epsilon = 1e-15);
        assert!(d.period().is_none());
    }

    #[test]
    fn zero_complex_detuning_is_rejected() {
        let p = ModelParams::with_unit_coupling(0.0, 10.0, 10.0).unwrap();
        assert_eq!(
            derive_params(&p),
            Err(RepeaterError::SingularDetuning { delta: 0.0 })
        );
        // Zero Δ alone is fine when the rates differ.
        let p = ModelParams::with_unit_coupling(0.0, 20.0, 10.0).unwrap();
        assert!(derive_params(&p).is_ok());
    }

    #[test]
    fn rejects_unphysical_rates() {
        assert!(ModelParams::new(0.0, 10.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(-1.0, 10.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 10.0, -1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 10.0, 1.0, -0.5).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 1.0, 1.0).is_err());
        let bypass = ModelParams {
            g: 1.0,
            delta: 1.0,
            kappa: -3.0,
            gamma: 0.0,
        };
        assert!(derive_params(&bypass).is_err());
    }

    #[test]
    fn large_detuning_examples() {
        let p = |d, k, gm| ModelParams::with_unit_coupling(d, k, gm).unwrap();
        assert!(large_detuning_check(&p(10.0, 10.0, 10.0), 10.0));
        assert!(!large_detuning_check(&p(2.0, 10.0, 10.0), 10.0));
        // |δ| = sqrt(125) ≈ 11.18
        assert!(large_detuning_check(&p(10.0, 20.0, 10.0), 10.0));
        assert!(!large_detuning_check(&p(10.0, 20.0, 10.0), 11.2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn lambda_times_delta_is_g_squared(
                g in 0.1f64..5.0,
                delta in -50.0f64..50.0,
                kappa in 0.0f64..40.0,
                gamma in 0.0f64..40.0,
            ) {
                let p = ModelParams::new(g, delta, kappa, gamma).unwrap();
                prop_assume!(p.complex_detuning().norm() > 1e-3);
                let d = derive_params(&p).unwrap();
                let prod = d.lambda * d.delta_complex;
                prop_assert!((prod - Complex64::new(g * g, 0.0)).norm() <= 1e-14 * (g * g).max(1.0));
                // pure function
                prop_assert_eq!(derive_params(&p).unwrap(), d);
                prop_assert_eq!(kappa == gamma, d.lambda.im == 0.0);
                if kappa > gamma && delta > 0.0 {
                    prop_assert!(d.lambda.im <= 0.0);
                }
            }
        }
    }
}
