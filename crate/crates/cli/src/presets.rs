//! Named sweeps that regenerate the published curves.
//!
//! Each preset is a list of parameter branches. Bell-measurement presets
//! sweep `gt`; cavity presets hold `gt` and sweep `gτ`.

use repeater_core::{ModelParams, PairVariant, Route, SwapCase};

use crate::error::{CliError, CliResult};
use crate::sweep::{Grid, SweepSpec, TimeAxis};

pub const DEFAULT_POINTS: usize = 10_001;
pub const T_RANGE: (f64, f64) = (0.0, 100.0);
pub const TAU_RANGE: (f64, f64) = (10.0, 110.0);

pub const NAMES: [&str; 17] = [
    "fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig4a", "fig4b", "fig4c", "fig5", "fig5a",
    "fig5b", "fig5c", "fig6", "fig6a", "fig6b", "fig6c", "all",
];

const PSI_PSI: SwapCase = SwapCase::new(PairVariant::Psi, PairVariant::Psi);
const PSI_PSIPRIME: SwapCase = SwapCase::new(PairVariant::Psi, PairVariant::PsiPrime);

fn params(delta: f64, kappa: f64, gamma: f64, g: f64) -> ModelParams {
    ModelParams::new(g, delta * g, kappa * g, gamma * g).expect("preset parameters are valid")
}

fn bsm(
    branches: &[(f64, f64, f64)],
    route: Route,
    g: f64,
    points: usize,
) -> CliResult<Vec<SweepSpec>> {
    let grid = Grid::new(T_RANGE.0, T_RANGE.1, points)?;
    Ok(branches
        .iter()
        .map(|&(delta, kappa, gamma)| SweepSpec {
            params: params(delta, kappa, gamma, g),
            t_axis: TimeAxis::Grid(grid),
            tau_grid: None,
            cases: vec![PSI_PSI],
            routes: vec![route],
        })
        .collect())
}

/// `(Δ, κ, Γ, gt)` branches swept over `gτ` for the given panels.
fn qed(
    branches: &[(f64, f64, f64, f64)],
    panels: &str,
    g: f64,
    points: usize,
) -> CliResult<Vec<SweepSpec>> {
    let grid = Grid::new(TAU_RANGE.0, TAU_RANGE.1, points)?;
    let mut out = Vec::new();
    for &(delta, kappa, gamma, gt) in branches {
        for panel in panels.chars() {
            let (case, route) = match panel {
                'a' => (PSI_PSI, Route::QedEg),
                'b' => (PSI_PSI, Route::QedGe),
                _ => (PSI_PSIPRIME, Route::QedEg),
            };
            out.push(SweepSpec {
                params: params(delta, kappa, gamma, g),
                t_axis: TimeAxis::Fixed(gt),
                tau_grid: Some(grid),
                cases: vec![case],
                routes: vec![route],
            });
        }
    }
    Ok(out)
}

/// Expands a preset name into its branches for coupling `g` and `points` grid points.
pub fn preset(name: &str, g: f64, points: usize) -> CliResult<Vec<SweepSpec>> {
    let dissipation = [(10.0, 10.0, 10.0), (10.0, 20.0, 10.0)];
    let detuning = [(10.0, 20.0, 10.0), (30.0, 20.0, 10.0)];
    let (figure, panels) = match name.len() {
        5 => (&name[..4], &name[4..]),
        4 => (name, "abc"),
        _ => ("", ""),
    };
    match (figure, panels) {
        ("fig2", "a") => bsm(&dissipation, Route::BsmBPrime, g, points),
        ("fig2", "b") => bsm(&detuning, Route::BsmBPrime, g, points),
        ("fig3", "a") => bsm(&dissipation, Route::BsmB, g, points),
        ("fig3", "b") => bsm(&detuning, Route::BsmB, g, points),
        ("fig4", p) if valid_panels(p) => qed(
            &[(10.0, 20.0, 10.0, 10.0), (30.0, 20.0, 10.0, 10.0)],
            p,
            g,
            points,
        ),
        ("fig5", p) if valid_panels(p) => qed(
            &[(10.0, 10.0, 10.0, 10.0), (10.0, 20.0, 10.0, 10.0)],
            p,
            g,
            points,
        ),
        ("fig6", p) if valid_panels(p) => qed(
            &[(10.0, 20.0, 10.0, 3.0), (10.0, 20.0, 10.0, 10.0)],
            p,
            g,
            points,
        ),
        _ if name == "all" => {
            let mut out = Vec::new();
            for n in ["fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5", "fig6"] {
                out.extend(preset(n, g, points)?);
            }
            Ok(out)
        }
        _ => Err(CliError::Invalid(format!(
            "unknown preset {name:?} (expected one of {})",
            NAMES.join(", ")
        ))),
    }
}

fn valid_panels(p: &str) -> bool {
    matches!(p, "a" | "b" | "c" | "abc")
}
