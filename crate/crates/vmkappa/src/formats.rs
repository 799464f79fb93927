//! CSV layouts of the raw records, the error summaries and the trend fits.
//!
//! Floats that carry results are written with 17 significant digits
//! (`{:.16e}`), which reproduces every `f64` exactly on reading. Concentration
//! values use the shortest exact representation so the files stay readable.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use csv::StringRecord;
use vmkappa_core::{ErrorKind, EstimatorId, Failure};

use crate::error::{Error, Result};
use crate::fits::FitRow;
use crate::harness::ErrorRecord;
use crate::summary::ErrorSummary;

pub const ESTIMATES_HEADER: [&str; 8] =
    ["estimator", "kappa", "l", "N", "m", "estimate", "failure", "seconds"];
pub const SUMMARY_HEADER: [&str; 9] = [
    "estimator", "kappa", "N", "mae", "mrae", "n_failures", "n_used", "time_mean_ms", "time_std_ms",
];
pub const FITS_HEADER: [&str; 12] = [
    "estimator",
    "kappa",
    "error_kind",
    "alpha",
    "beta",
    "resid_std_lin",
    "pred_l4",
    "pred_l13",
    "gamma",
    "tau",
    "tau_degenerate",
    "resid_std_decay",
];

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

/// Streams [`ErrorRecord`]s as `estimates.csv` rows.
pub struct EstimatesWriter<W: Write> {
    inner: csv::Writer<W>,
    header_pending: bool,
}

impl<W: Write> EstimatesWriter<W> {
    pub fn new(sink: W, with_header: bool) -> Self {
        Self {
            inner: csv::WriterBuilder::new().has_headers(false).from_writer(sink),
            header_pending: with_header,
        }
    }

    pub fn write(&mut self, r: &ErrorRecord) -> io::Result<()> {
        if self.header_pending {
            self.inner.write_record(ESTIMATES_HEADER)?;
            self.header_pending = false;
        }
        let (estimate, failure) = match r.result {
            Ok(v) => (format_float(v), String::new()),
            Err(f) => (String::new(), f.as_str().to_owned()),
        };
        self.inner.write_record([
            r.estimator.as_str().to_owned(),
            r.kappa.to_string(),
            r.level.to_string(),
            r.n().to_string(),
            r.replicate.to_string(),
            estimate,
            failure,
            format_float(r.seconds),
        ])?;
        Ok(())
    }

    pub fn flush(&mut self) -> io::Result<()> {
        if self.header_pending {
            self.inner.write_record(ESTIMATES_HEADER)?;
            self.header_pending = false;
        }
        self.inner.flush()
    }

    pub fn get_ref(&self) -> &W {
        self.inner.get_ref()
    }
}

/// Parses the cells of one row against a known header.
struct Row<'a> {
    path: &'a Path,
    line: u64,
    header: &'static [&'static str],
    record: &'a StringRecord,
}

impl Row<'_> {
    fn err(&self, col: usize, what: &str) -> Error {
        Error::schema(
            self.path,
            format!("line {}, column `{}`: {what}", self.line, self.header[col]),
        )
    }

    fn cell(&self, col: usize) -> &str {
        self.record.get(col).unwrap_or("")
    }

    fn parse<T: std::str::FromStr>(&self, col: usize) -> Result<T> {
        let s = self.cell(col);
        s.parse().map_err(|_| self.err(col, &format!("cannot parse `{s}`")))
    }

    fn float(&self, col: usize) -> Result<f64> {
        self.parse::<f64>(col)
    }

    fn opt_float(&self, col: usize) -> Result<Option<f64>> {
        if self.cell(col).is_empty() {
            Ok(None)
        } else {
            self.float(col).map(Some)
        }
    }

    fn estimator(&self, col: usize) -> Result<EstimatorId> {
        let s = self.cell(col);
        s.parse().map_err(|_| self.err(col, &format!("unknown estimator `{s}`")))
    }
}

/// Checks the header cell by cell, naming the first column that differs.
fn check_header(path: &Path, found: &StringRecord, expected: &[&str]) -> Result<()> {
    for (i, want) in expected.iter().enumerate() {
        match found.get(i) {
            Some(got) if got == *want => {}
            Some(got) => {
                return Err(Error::schema(
                    path,
                    format!("column {}: expected `{want}`, found `{got}`", i + 1),
                ))
            }
            None => return Err(Error::schema(path, format!("missing column `{want}`"))),
        }
    }
    if found.len() > expected.len() {
        return Err(Error::schema(
            path,
            format!("unexpected column `{}`", found.get(expected.len()).unwrap_or("")),
        ));
    }
    Ok(())
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::schema(path, e.to_string())
    }
}

/// Reads a CSV with the given header, handing each row to `parse`.
fn read_rows<R: Read, T>(
    path: &Path,
    source: R,
    header: &'static [&'static str],
    mut parse: impl FnMut(&Row<'_>) -> Result<T>,
) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for_each_row(path, source, header, |row| {
        out.push(parse(row)?);
        Ok(())
    })?;
    Ok(out)
}

fn for_each_row<R: Read>(
    path: &Path,
    source: R,
    header: &'static [&'static str],
    mut visit: impl FnMut(&Row<'_>) -> Result<()>,
) -> Result<()> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(source);
    let found = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    check_header(path, &found, header)?;
    let mut record = StringRecord::new();
    loop {
        match reader.read_record(&mut record) {
            Ok(true) => {}
            Ok(false) => break,
            Err(e) => return Err(csv_error(path, e)),
        }
        let line = record.position().map_or(0, |p| p.line());
        let row = Row { path, line, header, record: &record };
        if record.len() != header.len() {
            return Err(Error::schema(
                path,
                format!("line {line}: expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        visit(&row)?;
    }
    Ok(())
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

fn parse_estimate_row(row: &Row<'_>) -> Result<ErrorRecord> {
    let level: u32 = row.parse(2)?;
    if !(1..=62).contains(&level) {
        return Err(row.err(2, "level out of range"));
    }
    let n: u64 = row.parse(3)?;
    if n != 1u64 << level {
        return Err(row.err(3, &format!("expected 2^{level}")));
    }
    let replicate: usize = row.parse(4)?;
    if replicate == 0 {
        return Err(row.err(4, "replicates are numbered from 1"));
    }
    let result = match (row.cell(5).is_empty(), row.cell(6).is_empty()) {
        (false, true) => Ok(row.float(5)?),
        (true, false) => {
            let s = row.cell(6);
            Err(s.parse::<Failure>().map_err(|_| row.err(6, &format!("unknown failure `{s}`")))?)
        }
        _ => return Err(row.err(6, "exactly one of estimate and failure must be set")),
    };
    Ok(ErrorRecord {
        estimator: row.estimator(0)?,
        kappa: row.float(1)?,
        level,
        replicate,
        result,
        seconds: row.float(7)?,
    })
}

/// Calls `visit` on every record of an `estimates.csv`, without holding
/// the whole file in memory.
pub fn for_each_estimate(path: &Path, mut visit: impl FnMut(ErrorRecord)) -> Result<()> {
    for_each_row(path, open(path)?, &ESTIMATES_HEADER, |row| {
        visit(parse_estimate_row(row)?);
        Ok(())
    })
}

pub fn read_estimates(path: &Path) -> Result<Vec<ErrorRecord>> {
    read_rows(path, open(path)?, &ESTIMATES_HEADER, parse_estimate_row)
}

pub fn write_estimates(path: &Path, records: &[ErrorRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = EstimatesWriter::new(io::BufWriter::new(file), true);
    for r in records {
        w.write(r).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn writer(path: &Path, header: &[&str]) -> Result<csv::Writer<File>> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    Ok(w)
}

pub fn write_summary(path: &Path, rows: &[ErrorSummary]) -> Result<()> {
    let mut w = writer(path, &SUMMARY_HEADER)?;
    for s in rows {
        w.write_record([
            s.estimator.as_str().to_owned(),
            s.kappa.to_string(),
            s.n.to_string(),
            format_opt(s.mae),
            format_opt(s.mrae),
            s.n_failures.to_string(),
            s.n_used.to_string(),
            format_float(s.time_mean_ms),
            format_float(s.time_std_ms),
        ])
        .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_summary(path: &Path) -> Result<Vec<ErrorSummary>> {
    read_rows(path, open(path)?, &SUMMARY_HEADER, |row| {
        let n: usize = row.parse(2)?;
        if !n.is_power_of_two() || n < 2 {
            return Err(row.err(2, "sample sizes are powers of two from 2"));
        }
        Ok(ErrorSummary {
            estimator: row.estimator(0)?,
            kappa: row.float(1)?,
            n,
            mae: row.opt_float(3)?,
            mrae: row.opt_float(4)?,
            n_failures: row.parse(5)?,
            n_used: row.parse(6)?,
            time_mean_ms: row.float(7)?,
            time_std_ms: row.float(8)?,
        })
    })
}

pub fn write_fits(path: &Path, rows: &[FitRow]) -> Result<()> {
    let mut w = writer(path, &FITS_HEADER)?;
    for f in rows {
        w.write_record([
            f.estimator.as_str().to_owned(),
            f.kappa.to_string(),
            f.error_kind.as_str().to_owned(),
            format_float(f.alpha),
            format_float(f.beta),
            format_float(f.resid_std_lin),
            format_float(f.pred_l4),
            format_float(f.pred_l13),
            format_float(f.gamma),
            format_float(f.tau),
            f.tau_degenerate.to_string(),
            format_float(f.resid_std_decay),
        ])
        .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_fits(path: &Path) -> Result<Vec<FitRow>> {
    read_rows(path, open(path)?, &FITS_HEADER, |row| {
        let kind = row.cell(2);
        Ok(FitRow {
            estimator: row.estimator(0)?,
            kappa: row.float(1)?,
            error_kind: kind
                .parse::<ErrorKind>()
                .map_err(|_| row.err(2, &format!("unknown error kind `{kind}`")))?,
            alpha: row.float(3)?,
            beta: row.float(4)?,
            resid_std_lin: row.float(5)?,
            pred_l4: row.float(6)?,
            pred_l13: row.float(7)?,
            gamma: row.float(8)?,
            tau: row.float(9)?,
            tau_degenerate: row.parse(10)?,
            resid_std_decay: row.float(11)?,
        })
    })
}

/// Default locations of the three files inside an output directory.
pub fn default_paths(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    (
        dir.join(crate::harness::ESTIMATES_FILE),
        dir.join(crate::summary::SUMMARY_FILE),
        dir.join(crate::fits::FITS_FILE),
    )
}
