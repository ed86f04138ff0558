//! Report emission: an aligned human-readable table (instance, sequential
//! time, speedup per worker count, time at the largest count), a flat CSV
//! of raw samples, and a structured JSON dump of the full [`RunReport`].
//! CSV and JSON parse back losslessly.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harness::RunReport;

pub const CSV_HEADER: &str = "problem,size,workers,sample,seconds,solved";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
    Structured,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Self::Table),
            "csv" => Ok(Self::Csv),
            "structured" => Ok(Self::Structured),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Table => "table",
            Self::Csv => "csv",
            Self::Structured => "structured",
        })
    }
}

pub fn emit_report(report: &RunReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Table => Ok(render_table(report)),
        ReportFormat::Csv => Ok(to_csv(report)),
        ReportFormat::Structured => Ok(to_structured(report)?),
    }
}

/// One flattened sample, the unit of the CSV format.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow {
    pub problem: String,
    pub size: usize,
    pub workers: usize,
    pub sample: usize,
    pub seconds: f64,
    pub solved: bool,
}

pub fn csv_rows(report: &RunReport) -> Vec<CsvRow> {
    report
        .cells
        .iter()
        .flat_map(|cell| {
            cell.samples.iter().map(|s| CsvRow {
                problem: report.problem.clone(),
                size: cell.size,
                workers: cell.workers,
                sample: s.sample,
                seconds: s.seconds,
                solved: s.solved,
            })
        })
        .collect()
}

/// Seconds use the shortest float representation that parses back exactly;
/// problem names never contain commas, so no quoting is needed.
pub fn to_csv(report: &RunReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in csv_rows(report) {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.problem, row.size, row.workers, row.sample, row.seconds, row.solved
        ));
    }
    out
}

/// Parses [`to_csv`] output back into rows. Blank lines are ignored.
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == CSV_HEADER => {}
        _ => {
            return Err(Error::MalformedReport(format!(
                "first line must be the header `{CSV_HEADER}`"
            )))
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::MalformedReport(format!(
                "line {lineno}: expected 6 fields, found {}",
                fields.len()
            )));
        }
        let field = |i: usize, what: &str| -> Result<&str> {
            let v = fields[i];
            if v.is_empty() {
                Err(Error::MalformedReport(format!("line {lineno}: empty {what}")))
            } else {
                Ok(v)
            }
        };
        rows.push(CsvRow {
            problem: field(0, "problem")?.to_string(),
            size: parse_field(fields[1], lineno, "size")?,
            workers: parse_field(fields[2], lineno, "workers")?,
            sample: parse_field(fields[3], lineno, "sample")?,
            seconds: parse_field(fields[4], lineno, "seconds")?,
            solved: parse_field(fields[5], lineno, "solved")?,
        });
    }
    Ok(rows)
}

fn parse_field<T: FromStr>(raw: &str, lineno: usize, what: &str) -> Result<T> {
    raw.parse().map_err(|_| {
        Error::MalformedReport(format!("line {lineno}: cannot parse {what} from `{raw}`"))
    })
}

pub fn to_structured(report: &RunReport) -> Result<String> {
    let mut out = serde_json::to_string_pretty(report)?;
    out.push('\n');
    Ok(out)
}

pub fn parse_structured(text: &str) -> Result<RunReport> {
    Ok(serde_json::from_str(text)?)
}

/// Renders the aligned table: one row per size with the baseline mean time,
/// one speedup column per worker count, and the mean time at the largest
/// worker count. Unavailable aggregates print as `n/a`. A trailing note
/// reports censored samples when any exist; host details stay out of the
/// output so tables compare cleanly across machines.
pub fn render_table(report: &RunReport) -> String {
    let baseline = report.worker_counts.first().copied();
    let last = report.worker_counts.last().copied();

    let mut header: Vec<String> = vec!["instance".into(), "seq(s)".into()];
    for &w in &report.worker_counts {
        header.push(format!("su@{w}"));
    }
    header.push(match last {
        Some(w) => format!("t@{w}(s)"),
        None => "t(s)".into(),
    });

    let cell = |size: usize, workers: Option<usize>| {
        workers.and_then(|w| {
            report
                .cells
                .iter()
                .find(|c| c.size == size && c.workers == w)
        })
    };
    let mut rows: Vec<Vec<String>> = Vec::new();
    for &size in &report.sizes {
        let mut row = vec![format!("{}-{}", report.problem, size)];
        row.push(fmt_time(cell(size, baseline).and_then(|c| c.mean_seconds)));
        for &w in &report.worker_counts {
            row.push(fmt_speedup(cell(size, Some(w)).and_then(|c| c.speedup)));
        }
        row.push(fmt_time(cell(size, last).and_then(|c| c.mean_seconds)));
        rows.push(row);
    }

    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in &rows {
        for (w, field) in widths.iter_mut().zip(row) {
            *w = (*w).max(field.len());
        }
    }

    let mut out = format!(
        "# problem={} seed={} samples={} timeout={:.3}s\n",
        report.problem, report.seed_base, report.samples_per_cell, report.timeout_seconds
    );
    out.push_str(&format_row(&header, &widths));
    for row in &rows {
        out.push_str(&format_row(row, &widths));
    }
    let censored: usize = report.cells.iter().map(|c| c.censored).sum();
    if censored > 0 {
        let total: usize = report.cells.iter().map(|c| c.samples.len()).sum();
        out.push_str(&format!(
            "# censored: {censored} of {total} samples timed out (excluded from means)\n"
        ));
    }
    out
}

fn fmt_time(t: Option<f64>) -> String {
    match t {
        Some(t) => format!("{t:.3}"),
        None => "n/a".into(),
    }
}

fn fmt_speedup(s: Option<f64>) -> String {
    match s {
        Some(s) => format!("{s:.2}"),
        None => "n/a".into(),
    }
}

/// First column left-aligned, the rest right-aligned, two-space separator.
fn format_row(fields: &[String], widths: &[usize]) -> String {
    let mut line = String::new();
    for (i, (field, &width)) in fields.iter().zip(widths).enumerate() {
        if i > 0 {
            line.push_str("  ");
        }
        if i == 0 {
            line.push_str(&format!("{field:<width$}"));
        } else {
            line.push_str(&format!("{field:>width$}"));
        }
    }
    // Padding the last column never leaves trailing spaces: right-aligned
    // fields are flush with the column edge, and the first column is only
    // padded when another column follows.
    let trimmed = line.trim_end().len();
    line.truncate(trimmed);
    line.push('\n');
    line
}
