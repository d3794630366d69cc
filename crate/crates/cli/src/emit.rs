//! CSV and plot-data writers.

use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::rows::{EntropyRow, Row};

/// Opens the output target: a file when a path is given, stdout otherwise.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout())),
    })
}

/// How rows are rendered: per-experiment CSV or generic (x, y, series).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Csv,
    PlotData,
}

pub fn write_rows<R: Row>(rows: &[R], mode: OutputMode, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match mode {
        OutputMode::Csv => {
            w.write_record(R::headers())?;
            for row in rows {
                w.write_record(row.fields())?;
            }
        }
        OutputMode::PlotData => {
            w.write_record(["x", "y", "series"])?;
            for row in rows {
                for (x, y, series) in row.plot_triples() {
                    w.write_record([x, y, series])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Entropy rows revalidate the sandwich before anything is written; a
/// violation aborts the run with the contract exit code.
pub fn write_entropy_rows(
    rows: &[EntropyRow],
    mode: OutputMode,
    out: &mut dyn Write,
) -> Result<()> {
    for row in rows {
        row.validate(1e-9)?;
    }
    write_rows(rows, mode, out)
}

impl From<csv::Error> for crate::error::CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => crate::error::CliError::Io(io),
            other => crate::error::CliError::Config(format!("csv error: {other:?}")),
        }
    }
}
