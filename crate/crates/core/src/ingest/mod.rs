//! Log and model I/O: XES subset, fact files, CSV and reports.

mod csv;
mod factlog;
mod facts;
mod model;
mod report;
mod xes;

pub use self::csv::{parse_csv, write_csv_log};
pub use factlog::{parse_factlog, write_factlog};
pub use model::{parse_model, parse_query, write_model};
pub use report::{fmt_ratio, parse_ratio, write_answers, write_report, ReportFormat};
pub use xes::{parse_xes, parse_xes_bytes, parse_xes_str, read_xes_file, write_xes};

use std::fs;
use std::path::Path;

use crate::error::Error;
use crate::log::EventLog;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFormat {
    Xes,
    Facts,
    Csv,
}

impl LogFormat {
    /// Guesses from the file name: `.xes`, `.xes.gz`, `.lp` or `.csv`.
    pub fn from_path(path: &Path) -> Option<Self> {
        let name = path.file_name()?.to_str()?.to_ascii_lowercase();
        if name.ends_with(".xes") || name.ends_with(".xes.gz") {
            Some(LogFormat::Xes)
        } else if name.ends_with(".lp") {
            Some(LogFormat::Facts)
        } else if name.ends_with(".csv") {
            Some(LogFormat::Csv)
        } else {
            None
        }
    }
}

fn format_of(path: &Path) -> Result<LogFormat, Error> {
    LogFormat::from_path(path)
        .ok_or_else(|| Error::Unrepresentable(format!("cannot tell the log format of {}", path.display())))
}

/// Reads a log, choosing the parser from the extension. CSV files are
/// read with a `position` column when the header has one.
pub fn read_log(path: impl AsRef<Path>) -> Result<EventLog, Error> {
    let path = path.as_ref();
    match format_of(path)? {
        LogFormat::Xes => read_xes_file(path),
        LogFormat::Facts => parse_factlog(&fs::read_to_string(path)?),
        LogFormat::Csv => {
            let text = fs::read_to_string(path)?;
            let has_position = text.lines().next().is_some_and(|h| h.split(',').any(|c| c.trim() == "position"));
            parse_csv(text.as_bytes(), has_position)
        }
    }
}

pub fn write_log(path: impl AsRef<Path>, log: &EventLog) -> Result<(), Error> {
    let path = path.as_ref();
    let text = match format_of(path)? {
        LogFormat::Xes => {
            let text = write_xes(log);
            if path.to_string_lossy().to_ascii_lowercase().ends_with(".gz") {
                use std::io::Write;
                let mut gz = flate2::write::GzEncoder::new(Vec::new(), flate2::Compression::default());
                gz.write_all(text.as_bytes())?;
                fs::write(path, gz.finish()?)?;
                return Ok(());
            }
            text
        }
        LogFormat::Facts => write_factlog(log)?,
        LogFormat::Csv => write_csv_log(log)?,
    };
    fs::write(path, text)?;
    Ok(())
}
