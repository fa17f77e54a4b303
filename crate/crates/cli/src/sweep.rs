//! Parameter sweeps over the stage-one time `gt` and the cavity time `gτ`.
//!
//! Grids are dimensionless (`gt`, `gτ`); they are divided by `g` before evaluation.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use repeater_core::analytic::stage1_coefficients;
use repeater_core::{derive_params, swap, ModelParams, RepeaterError, Route, SwapCase};

use crate::error::{CliError, CliResult};

/// `steps` evenly spaced points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, steps: usize) -> CliResult<Self> {
        if !(start.is_finite() && stop.is_finite()) || start < 0.0 {
            return Err(CliError::Invalid(format!(
                "grid bounds must be finite and non-negative, got {start}..{stop}"
            )));
        }
        if steps < 2 {
            return Err(CliError::Invalid(format!(
                "a grid needs at least 2 points, got {steps}"
            )));
        }
        if start >= stop {
            return Err(CliError::Invalid(format!(
                "grid start {start} must be below stop {stop}"
            )));
        }
        Ok(Self { start, stop, steps })
    }

    pub fn point(&self, k: usize) -> f64 {
        if k + 1 == self.steps {
            self.stop
        } else {
            self.start + (self.stop - self.start) * k as f64 / (self.steps - 1) as f64
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|k| self.point(k))
    }
}

/// Parses `start:stop:steps`.
impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CliError::Invalid(format!("expected start:stop:steps, got {s:?}"));
        let [a, b, n] = parts.as_slice() else {
            return Err(bad());
        };
        Grid::new(
            a.parse().map_err(|_| bad())?,
            b.parse().map_err(|_| bad())?,
            n.parse().map_err(|_| bad())?,
        )
    }
}

/// Stage-one time axis: swept, or held at one value while `gτ` is swept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TimeAxis {
    Grid(Grid),
    Fixed(f64),
}

impl TimeAxis {
    fn points(&self) -> Vec<f64> {
        match self {
            TimeAxis::Grid(g) => g.points().collect(),
            TimeAxis::Fixed(t) => vec![*t],
        }
    }

    fn max(&self) -> f64 {
        match self {
            TimeAxis::Grid(g) => g.stop,
            TimeAxis::Fixed(t) => *t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub params: ModelParams,
    pub t_axis: TimeAxis,
    pub tau_grid: Option<Grid>,
    pub cases: Vec<SwapCase>,
    pub routes: Vec<Route>,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        derive_params(&self.params)?;
        if let TimeAxis::Fixed(t) = self.t_axis {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Invalid(format!(
                    "gt must be finite and non-negative, got {t}"
                )));
            }
        }
        if self.cases.is_empty() || self.routes.is_empty() {
            return Err(CliError::Invalid(
                "a sweep needs at least one case and one route".into(),
            ));
        }
        let cavity = self.routes.iter().any(Route::is_qed);
        match self.tau_grid {
            None if cavity => Err(CliError::Invalid("cavity routes need a gtau grid".into())),
            Some(g) if g.start < self.t_axis.max() => Err(CliError::Invalid(format!(
                "gtau grid starts at {} before the largest gt {}",
                g.start,
                self.t_axis.max()
            ))),
            _ => Ok(()),
        }
    }

    /// Grid points in output order: `gt`, then `gτ`, then case, then route.
    fn points(&self) -> Vec<(f64, Option<f64>, SwapCase, Route)> {
        let taus: Vec<f64> = self
            .tau_grid
            .map(|g| g.points().collect())
            .unwrap_or_default();
        let mut out = Vec::new();
        for t in self.t_axis.points() {
            for &case in &self.cases {
                for &route in self.routes.iter().filter(|r| !r.is_qed()) {
                    out.push((t, None, case, route));
                }
            }
            for &tau in &taus {
                for &case in &self.cases {
                    for &route in self.routes.iter().filter(|r| r.is_qed()) {
                        out.push((t, Some(tau), case, route));
                    }
                }
            }
        }
        out
    }
}

/// One dataset row; field order is the column order. Times and rates are in units of `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub gt: f64,
    pub gtau: Option<f64>,
    pub case: String,
    pub route: String,
    /// Empty when the outcome cannot occur at this point.
    pub concurrence: Option<f64>,
    pub success_probability: f64,
    #[serde(rename = "N")]
    pub n: f64,
    pub delta: f64,
    pub kappa: f64,
    pub gamma: f64,
}

pub const COLUMNS: [&str; 10] = [
    "gt",
    "gtau",
    "case",
    "route",
    "concurrence",
    "success_probability",
    "N",
    "delta",
    "kappa",
    "gamma",
];

/// Evaluates one route at dimensionless times `gt` and `gτ`.
pub fn evaluate(
    params: &ModelParams,
    gt: f64,
    gtau: Option<f64>,
    case: SwapCase,
    route: Route,
) -> CliResult<Row> {
    let d = derive_params(params)?;
    let c = stage1_coefficients(&d, gt / params.g)?;
    let (concurrence, success_probability) = match swap(case, route, &c, gtau.map(|x| x / params.g))
    {
        Ok(o) => (Some(o.concurrence), o.probability),
        Err(RepeaterError::DegenerateMeasurement { .. }) => (None, 0.0),
        Err(e) => return Err(e.into()),
    };
    Ok(Row {
        gt,
        gtau,
        case: case.to_string(),
        route: route.to_string(),
        concurrence,
        success_probability,
        n: c.n,
        delta: params.delta / params.g,
        kappa: params.kappa / params.g,
        gamma: params.gamma / params.g,
    })
}

/// Evaluates every grid point in parallel; rows come back in grid order.
pub fn run(spec: &SweepSpec) -> CliResult<Vec<Row>> {
    spec.validate()?;
    spec.points()
        .into_par_iter()
        .map(|(t, tau, case, route)| evaluate(&spec.params, t, tau, case, route))
        .collect()
}

/// Runs several specs back to back, keeping their order.
pub fn run_all(specs: &[SweepSpec]) -> CliResult<Vec<Row>> {
    let mut rows = Vec::new();
    for s in specs {
        rows.extend(run(s)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use repeater_core::PairVariant;

    fn spec() -> SweepSpec {
        SweepSpec {
            params: ModelParams::with_unit_coupling(10.0, 20.0, 10.0).unwrap(),
            t_axis: TimeAxis::Grid(Grid::new(0.0, 5.0, 6).unwrap()),
            tau_grid: None,
            cases: vec![SwapCase::new(PairVariant::Psi, PairVariant::Psi)],
            routes: vec![Route::BsmB],
        }
    }

    #[test]
    fn grid_parsing_and_endpoints() {
        let g: Grid = "0:100:10001".parse().unwrap();
        assert_eq!(g.point(0), 0.0);
        assert_eq!(g.point(10000), 100.0);
        assert!((g.point(1) - 0.01).abs() < 1e-15);
        assert!("1:0:5".parse::<Grid>().is_err());
        assert!("0:1:1".parse::<Grid>().is_err());
        assert!("0:1".parse::<Grid>().is_err());
    }

    #[test]
    fn degenerate_point_has_empty_concurrence() {
        let rows = run(&spec()).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].concurrence, None);
        assert_eq!(rows[0].success_probability, 0.0);
        assert!(rows[1].concurrence.is_some());
    }

    #[test]
    fn cavity_routes_require_tau() {
        let mut s = spec();
        s.routes = vec![Route::QedEg];
        assert!(run(&s).is_err());
        s.tau_grid = Some(Grid::new(1.0, 6.0, 3).unwrap());
        assert!(run(&s).is_err(), "tau before the last gt");
        s.tau_grid = Some(Grid::new(5.0, 8.0, 3).unwrap());
        assert_eq!(run(&s).unwrap().len(), 18);
    }
}
