//! Library side of the `repeater` command-line tool: sweeps, figure presets,
//! dataset writers and the verification report.

pub mod commands;
pub mod error;
pub mod output;
pub mod presets;
pub mod sweep;
pub mod verify;

pub use error::{CliError, CliResult};
pub use output::Format;
pub use sweep::{evaluate, Grid, Row, SweepSpec, TimeAxis, COLUMNS};
