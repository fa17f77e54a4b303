//! CSV and JSON serialization of dataset rows.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::sweep::{Row, COLUMNS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected csv or json)")),
        }
    }
}

pub fn write_rows<W: Write>(rows: &[Row], format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if rows.is_empty() {
                w.write_record(COLUMNS)?;
            }
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()
        }
        Format::Json => write_json(rows, out),
    }
}

pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

/// Runs `f` on a buffered file at `path`, or on stdout when `path` is `None` or `-`.
pub fn with_output<F>(path: Option<&Path>, f: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let wrap = |p: &Path, source| CliError::Output {
        path: p.display().to_string(),
        source,
    };
    match path.filter(|p| p.as_os_str() != "-") {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(|e| wrap(p, e))?);
            f(&mut w).and_then(|_| w.flush()).map_err(|e| wrap(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).map_err(|e| wrap(Path::new("<stdout>"), e))
        }
    }
}
