use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

/// One line of experiment output. The column set is fixed so CSV files
/// from different runs and commands can be concatenated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub experiment: String,
    pub p: Option<u128>,
    pub bits: Option<u32>,
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub measured: String,
    pub expected: String,
    pub pass: bool,
}

impl ExperimentRow {
    pub fn text(&self) -> String {
        fn o<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "-".into(), T::to_string)
        }
        format!(
            "experiment={} p={} bits={} n={} alpha={} beta={} samples={} seed={} measured={} expected={} pass={}",
            self.experiment,
            o(&self.p),
            o(&self.bits),
            o(&self.n),
            o(&self.alpha),
            o(&self.beta),
            o(&self.samples),
            self.seed,
            self.measured,
            self.expected,
            self.pass
        )
    }
}

/// Writes rows as CSV. Files are appended to, and the header is written
/// only when the file is new or empty.
pub fn write_csv(rows: &[ExperimentRow], out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => {
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| CliError::io(path, e))?;
            let empty = file.metadata().map_err(|e| CliError::io(path, e))?.len() == 0;
            let mut w = csv::WriterBuilder::new().has_headers(empty).from_writer(file);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush().map_err(|e| CliError::io(path, e))?;
        }
        None => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for row in rows {
                w.serialize(row)?;
            }
            w.flush().map_err(|e| CliError::io("<stdout>", e))?;
        }
    }
    Ok(())
}

/// Writes plain text to `out` (appending) or stdout.
pub fn write_text(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| CliError::io(path, e))?;
            writeln!(file, "{text}").map_err(|e| CliError::io(path, e))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn emit_rows(rows: &[ExperimentRow], format: Format, out: Option<&Path>) -> CliResult<()> {
    match format {
        Format::Csv => write_csv(rows, out),
        Format::Text => {
            let text: Vec<String> = rows.iter().map(ExperimentRow::text).collect();
            write_text(&text.join("\n"), out)
        }
    }
}
