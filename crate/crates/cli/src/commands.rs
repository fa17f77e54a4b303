//! Single-point evaluations behind the `stage1`, `bsm` and `qed` subcommands.

use serde::Serialize;

use repeater_core::analytic::{collapse_pair, stage1_coefficients};
use repeater_core::{
    concurrence_pure, derive_params, large_detuning_check, ModelParams, PairOutcome, RepeaterError,
    Route, SwapCase,
};

use crate::error::{CliError, CliResult};
use crate::sweep::{evaluate, Row};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

impl From<repeater_core::Complex64> for ComplexValue {
    fn from(z: repeater_core::Complex64) -> Self {
        Self {
            re: z.re,
            im: z.im,
            abs: z.norm(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    /// Detected state of the middle atoms.
    pub outcome: &'static str,
    pub variant: &'static str,
    /// `None` when this outcome cannot occur.
    pub probability: f64,
    pub eg: Option<ComplexValue>,
    pub ge: Option<ComplexValue>,
    pub concurrence: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage1Report {
    pub g: f64,
    pub delta: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub gt: f64,
    pub lambda: ComplexValue,
    pub large_detuning: bool,
    /// `L1..L6`.
    pub coefficients: Vec<ComplexValue>,
    #[serde(rename = "N")]
    pub n: f64,
    pub pairs: Vec<PairReport>,
}

pub fn stage1(params: &ModelParams, gt: f64) -> CliResult<Stage1Report> {
    let d = derive_params(params)?;
    let c = stage1_coefficients(&d, gt / params.g)?;
    let mut pairs = Vec::new();
    for (outcome, variant) in [(PairOutcome::Eg, "psi"), (PairOutcome::Ge, "psiprime")] {
        let report = match collapse_pair(&c, outcome, [1, 4]) {
            Ok((s, p)) => PairReport {
                outcome: outcome.ket(),
                variant,
                probability: p,
                eg: Some(s.amp("eg").into()),
                ge: Some(s.amp("ge").into()),
                concurrence: Some(concurrence_pure(&s)?),
            },
            Err(RepeaterError::DegenerateMeasurement { .. }) => PairReport {
                outcome: outcome.ket(),
                variant,
                probability: 0.0,
                eg: None,
                ge: None,
                concurrence: None,
            },
            Err(e) => return Err(e.into()),
        };
        pairs.push(report);
    }
    Ok(Stage1Report {
        g: params.g,
        delta: params.delta / params.g,
        kappa: params.kappa / params.g,
        gamma: params.gamma / params.g,
        gt,
        lambda: (d.lambda / params.g).into(),
        large_detuning: large_detuning_check(params, 10.0),
        coefficients: c.l.iter().map(|&z| z.into()).collect(),
        n: c.n,
        pairs,
    })
}

fn fmt_complex(z: &ComplexValue) -> String {
    format!("{:+.12} {:+.12}i  (|·| = {:.12})", z.re, z.im, z.abs)
}

pub fn render_stage1(r: &Stage1Report) -> String {
    let mut s = format!(
        "Δ={}g κ={}g Γ={}g g={} gt={}\nλ/g = {}\n",
        r.delta,
        r.kappa,
        r.gamma,
        r.g,
        r.gt,
        fmt_complex(&r.lambda)
    );
    for (k, z) in r.coefficients.iter().enumerate() {
        s.push_str(&format!("L{} = {}\n", k + 1, fmt_complex(z)));
    }
    s.push_str(&format!("N = {:.12}\n", r.n));
    for p in &r.pairs {
        match (&p.eg, &p.ge, p.concurrence) {
            (Some(eg), Some(ge), Some(c)) => s.push_str(&format!(
                "middle {} -> {} on (1,4): p = {:.12}, C = {:.12}\n  eg: {}\n  ge: {}\n",
                p.outcome,
                p.variant,
                p.probability,
                c,
                fmt_complex(eg),
                fmt_complex(ge)
            )),
            _ => s.push_str(&format!(
                "middle {} -> impossible at this time (p = 0)\n",
                p.outcome
            )),
        }
    }
    if !r.large_detuning {
        s.push_str("warning: |δ| < 10g, the effective interaction is outside its validity range\n");
    }
    s
}

/// Bell-measurement rows for each case and route.
pub fn bsm(
    params: &ModelParams,
    gt: f64,
    cases: &[SwapCase],
    routes: &[Route],
) -> CliResult<Vec<Row>> {
    if let Some(r) = routes.iter().find(|r| r.is_qed()) {
        return Err(CliError::Invalid(format!(
            "{r} is a cavity route; use the qed subcommand"
        )));
    }
    let mut rows = Vec::new();
    for &case in cases {
        for &route in routes {
            rows.push(evaluate(params, gt, None, case, route)?);
        }
    }
    Ok(rows)
}

/// Cavity-swap rows for each case and route.
pub fn qed(
    params: &ModelParams,
    gt: f64,
    gtau: f64,
    cases: &[SwapCase],
    routes: &[Route],
) -> CliResult<Vec<Row>> {
    if let Some(r) = routes.iter().find(|r| !r.is_qed()) {
        return Err(CliError::Invalid(format!(
            "{r} is a Bell-measurement route; use the bsm subcommand"
        )));
    }
    if gtau < gt {
        return Err(CliError::Invalid(format!(
            "gtau ({gtau}) must not be smaller than gt ({gt})"
        )));
    }
    let mut rows = Vec::new();
    for &case in cases {
        for &route in routes {
            rows.push(evaluate(params, gt, Some(gtau), case, route)?);
        }
    }
    Ok(rows)
}
