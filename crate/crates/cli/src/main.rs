use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use repeater_cli::output::{with_output, write_json, write_rows};
use repeater_cli::sweep::{self, TimeAxis};
use repeater_cli::{commands, presets, verify, CliError, CliResult, Format, Grid, SweepSpec};
use repeater_core::{BellChoice, ModelParams, PairOutcome, Route, SwapCase};

/// Two-stage quantum repeater with lossy cavities. Rates, detunings and times are in units of g.
#[derive(Parser)]
#[command(name = "repeater", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct RateArgs {
    /// Atom-cavity coupling.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Atom-field detuning Δ, in units of g.
    #[arg(long, allow_hyphen_values = true)]
    delta: f64,
    /// Cavity decay rate κ, in units of g.
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
    /// Atomic decay rate Γ, in units of g.
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
}

impl RateArgs {
    fn params(&self) -> CliResult<ModelParams> {
        Ok(ModelParams::new(
            self.g,
            self.delta * self.g,
            self.kappa * self.g,
            self.gamma * self.g,
        )?)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Stage-one coefficients, norm and heralded pair states.
    Stage1 {
        #[command(flatten)]
        rates: RateArgs,
        #[arg(long)]
        gt: f64,
        /// Print JSON instead of text.
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
    },
    /// Swap by Bell measurement of atoms (4,5).
    Bsm {
        #[command(flatten)]
        rates: RateArgs,
        #[arg(long)]
        gt: f64,
        /// Input product; all four when omitted.
        #[arg(long)]
        case: Vec<SwapCase>,
        /// Bell state b or bprime; both when omitted.
        #[arg(long)]
        bell: Vec<BellChoice>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Swap by a second cavity interaction of atoms (4,5) from gt to gtau.
    Qed {
        #[command(flatten)]
        rates: RateArgs,
        #[arg(long)]
        gt: f64,
        #[arg(long)]
        gtau: f64,
        #[arg(long)]
        case: Vec<SwapCase>,
        /// qed-eg or qed-ge; both when omitted.
        #[arg(long)]
        route: Vec<Route>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Grid sweep, either a named figure preset or a custom grid.
    Sweep {
        /// fig2a, fig2b, fig3a, fig3b, fig4[a-c], fig5[a-c], fig6[a-c] or all.
        #[arg(long, conflicts_with_all = ["delta", "t_grid", "tau_grid", "gt", "case", "route"])]
        preset: Option<String>,
        /// Grid points per axis for presets.
        #[arg(long, default_value_t = presets::DEFAULT_POINTS)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        kappa: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        /// gt grid as start:stop:steps.
        #[arg(long, conflicts_with = "gt")]
        t_grid: Option<Grid>,
        /// Fixed gt when only gtau is swept.
        #[arg(long)]
        gt: Option<f64>,
        /// gtau grid as start:stop:steps.
        #[arg(long)]
        tau_grid: Option<Grid>,
        #[arg(long)]
        case: Vec<SwapCase>,
        #[arg(long)]
        route: Vec<Route>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check closed forms against the numerical oracle.
    Verify {
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        /// Check a single parameter point instead of the standard grid.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 0.0, requires = "delta")]
        kappa: f64,
        #[arg(long, default_value_t = 0.0, requires = "delta")]
        gamma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// text or json.
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
    },
}

fn or_all<T: Copy>(chosen: Vec<T>, all: &[T]) -> Vec<T> {
    if chosen.is_empty() {
        all.to_vec()
    } else {
        chosen
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Stage1 { rates, gt, format } => {
            let report = commands::stage1(&rates.params()?, gt)?;
            with_output(None, |w| {
                if format == "json" {
                    write_json(&report, w)
                } else {
                    w.write_all(commands::render_stage1(&report).as_bytes())
                }
            })
        }
        Command::Bsm {
            rates,
            gt,
            case,
            bell,
            output,
        } => {
            let routes: Vec<Route> = or_all(bell, &BellChoice::ALL)
                .into_iter()
                .map(Route::bell)
                .collect();
            let rows = commands::bsm(&rates.params()?, gt, &or_all(case, &SwapCase::ALL), &routes)?;
            with_output(output.out.as_deref(), |w| {
                write_rows(&rows, output.format, w)
            })
        }
        Command::Qed {
            rates,
            gt,
            gtau,
            case,
            route,
            output,
        } => {
            let all = [Route::qed(PairOutcome::Eg), Route::qed(PairOutcome::Ge)];
            let rows = commands::qed(
                &rates.params()?,
                gt,
                gtau,
                &or_all(case, &SwapCase::ALL),
                &or_all(route, &all),
            )?;
            with_output(output.out.as_deref(), |w| {
                write_rows(&rows, output.format, w)
            })
        }
        Command::Sweep {
            preset,
            points,
            g,
            delta,
            kappa,
            gamma,
            t_grid,
            gt,
            tau_grid,
            case,
            route,
            output,
        } => {
            let specs = match preset {
                Some(name) => presets::preset(&name, g, points)?,
                None => {
                    let delta = delta.ok_or_else(|| {
                        CliError::Invalid("--delta is required without --preset".into())
                    })?;
                    let t_axis = match (t_grid, gt) {
                        (Some(grid), _) => TimeAxis::Grid(grid),
                        (None, Some(t)) => TimeAxis::Fixed(t),
                        (None, None) => {
                            return Err(CliError::Invalid("give --t-grid or --gt".into()))
                        }
                    };
                    vec![SweepSpec {
                        params: ModelParams::new(g, delta * g, kappa * g, gamma * g)?,
                        t_axis,
                        tau_grid,
                        cases: or_all(case, &SwapCase::ALL),
                        routes: if route.is_empty() {
                            if tau_grid.is_some() {
                                Route::ALL.to_vec()
                            } else {
                                vec![Route::BsmB, Route::BsmBPrime]
                            }
                        } else {
                            route
                        },
                    }]
                }
            };
            let rows = sweep::run_all(&specs)?;
            with_output(output.out.as_deref(), |w| {
                write_rows(&rows, output.format, w)
            })
        }
        Command::Verify {
            g,
            delta,
            kappa,
            gamma,
            out,
            format,
        } => {
            let grid = match delta {
                Some(delta) => verify::VerifyGrid::around(vec![ModelParams::new(
                    g,
                    delta * g,
                    kappa * g,
                    gamma * g,
                )?]),
                None => verify::VerifyGrid::standard(g),
            };
            let report = verify::run(&grid)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            with_output(out.as_deref(), |w| {
                if format == "json" {
                    write_json(&report, w)
                } else {
                    w.write_all(verify::render(&report).as_bytes())
                }
            })?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::VerificationFailed(report.failures))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
