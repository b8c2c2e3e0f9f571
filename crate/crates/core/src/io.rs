//! CSV sweep tables, JSON solve and fit documents, atomic file writes.
//!
//! Decimal quantities carry 10 digits after the point. Constraint
//! violations, which sit many orders below one, use scientific notation
//! with a 10-digit mantissa fraction so they keep their precision.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{LspError, Result};
use crate::experiments::SweepRecord;
use crate::model::{Parity, Variant};
use crate::regression::{RegressionFit, PUBLISHED_EVEN, PUBLISHED_ODD};
use crate::solver::SolveReport;

pub const CSV_HEADER: [&str; 9] = [
    "n",
    "variables",
    "constraints",
    "runtime_seconds",
    "objective",
    "max_violation",
    "variant",
    "start",
    "converged",
];

/// `x` with 10 digits after the decimal point.
pub fn fixed10(x: f64) -> String {
    format!("{x:.10}")
}

/// `x` in scientific notation with 10 mantissa digits after the point.
pub fn sci10(x: f64) -> String {
    format!("{x:.10e}")
}

fn raw<S: Serializer>(text: String, s: S) -> std::result::Result<S::Ok, S::Error> {
    RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(s)
}

fn ser_fixed10<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    raw(fixed10(*x), s)
}

fn ser_sci10<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    raw(sci10(*x), s)
}

/// Ten significant digits.
fn ser_sig10<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    raw(format!("{x:.9e}"), s)
}

fn ser_sig10_array<S: Serializer>(xs: &[f64; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text = format!("[{}]", xs.iter().map(|x| format!("{x:.9e}")).collect::<Vec<_>>().join(","));
    raw(text, s)
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| LspError::Io(e.error))?;
    Ok(())
}

/// Sweep table as CSV text.
pub fn records_to_csv(records: &[SweepRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            r.num_vars.to_string(),
            r.num_constraints.to_string(),
            fixed10(r.runtime_seconds),
            fixed10(r.objective),
            sci10(r.max_violation),
            r.variant.to_string(),
            r.start_kind.to_string(),
            r.converged.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| LspError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Parses a sweep table; the header must match [`CSV_HEADER`] exactly.
pub fn records_from_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(LspError::Invalid(format!(
            "unexpected CSV header {:?}, expected {}",
            header.join(","),
            CSV_HEADER.join(",")
        )));
    }
    rdr.deserialize().map(|row| row.map_err(LspError::from)).collect()
}

pub fn write_csv(path: &Path, records: &[SweepRecord]) -> Result<()> {
    write_atomic(path, records_to_csv(records)?.as_bytes())
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRecord>> {
    records_from_csv(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexOut {
    #[serde(serialize_with = "ser_fixed10")]
    pub r: f64,
    #[serde(serialize_with = "ser_fixed10")]
    pub theta: f64,
    #[serde(serialize_with = "ser_fixed10")]
    pub x: f64,
    #[serde(serialize_with = "ser_fixed10")]
    pub y: f64,
}

/// JSON document describing one solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveDocument {
    pub n: usize,
    pub variant: Variant,
    pub symmetry: bool,
    pub converged: bool,
    #[serde(serialize_with = "ser_fixed10")]
    pub objective: f64,
    #[serde(serialize_with = "ser_sci10")]
    pub max_violation: f64,
    #[serde(serialize_with = "ser_fixed10")]
    pub runtime_seconds: f64,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub vertices: Vec<VertexOut>,
}

impl SolveDocument {
    pub fn new(variant: Variant, symmetry: bool, report: &SolveReport) -> Self {
        let config = &report.config;
        let vertices = config
            .r()
            .iter()
            .zip(config.theta())
            .zip(config.cartesian())
            .map(|((&r, &theta), [x, y])| VertexOut { r, theta, x, y })
            .collect();
        Self {
            n: config.n(),
            variant,
            symmetry,
            converged: report.converged,
            objective: report.objective,
            max_violation: report.max_violation,
            runtime_seconds: report.runtime_seconds,
            outer_iterations: report.outer_iterations,
            inner_iterations: report.inner_iterations,
            vertices,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// JSON document describing a regression fit, with the published
/// coefficients of the same parity alongside.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitDocument {
    pub parity: Parity,
    pub n_min: usize,
    pub n_max: usize,
    pub points: usize,
    #[serde(serialize_with = "ser_sig10_array")]
    pub coefficients: [f64; 3],
    #[serde(serialize_with = "ser_sig10_array")]
    pub p_values: [f64; 3],
    #[serde(serialize_with = "ser_sig10")]
    pub r_squared: f64,
    #[serde(serialize_with = "ser_sig10")]
    pub residual_max: f64,
    #[serde(serialize_with = "ser_sig10_array")]
    pub published_coefficients: [f64; 3],
}

impl FitDocument {
    pub fn new(fit: &RegressionFit, points: usize) -> Self {
        Self {
            parity: fit.parity,
            n_min: fit.n_min,
            n_max: fit.n_max,
            points,
            coefficients: fit.coefficients(),
            p_values: fit.p_values,
            r_squared: fit.r_squared,
            residual_max: fit.residual_max,
            published_coefficients: match fit.parity {
                Parity::Even => PUBLISHED_EVEN,
                Parity::Odd => PUBLISHED_ODD,
            },
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
