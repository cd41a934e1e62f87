use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

pub use exfgm::numfmt::{human, machine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    InvalidInput = 2,
    NotValid = 3,
    Io = 4,
    NotConfirmed = 5,
}

/// A failure that ends the command with a non-zero exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl fmt::Display) -> Self {
        Self {
            code: ExitCode::InvalidInput,
            message: message.to_string(),
        }
    }

    pub fn invalid(message: impl fmt::Display) -> Self {
        Self {
            code: ExitCode::NotValid,
            message: message.to_string(),
        }
    }

    pub fn io(context: &str, err: io::Error) -> Self {
        Self {
            code: ExitCode::Io,
            message: format!("{context}: {err}"),
        }
    }
}

impl From<exfgm::Error> for CliError {
    fn from(err: exfgm::Error) -> Self {
        match err {
            exfgm::Error::InadmissibleParams { .. } => CliError::invalid(err),
            _ => CliError::input(err),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::io("write failed", err)
    }
}

pub type CliResult = Result<ExitCode, CliError>;

pub fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::io("stdout", e.into()))?;
    writeln!(out)?;
    Ok(())
}

/// Writes `header` and `rows` as CSV (comma separated, `\n` line endings).
pub fn write_csv<W: Write>(mut out: W, header: &str, rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}

pub fn create_file(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(&format!("cannot create {}", path.display()), e))
}

pub fn interval(lower: f64, upper: f64) -> String {
    format!("[{}, {}]", human(lower), human(upper))
}
