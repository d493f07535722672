//! Deterministic CSV and JSON writers.
//!
//! Numbers are printed with 12 significant digits (`%.12g` style), `.` as the
//! decimal separator and `\n` line endings, so repeated runs are byte-identical.

use std::fs;
use std::path::{Path, PathBuf};

use ptlattice_core::{PhaseRow, ThresholdStatus};
use serde::Serialize;
use serde_json::Value;

use crate::config::JobConfig;
use crate::error::CliError;

pub const CSV_HEADER: &str = "m,mu,gamma_pt,status,evaluations";

/// `%.12g`; negative zero prints as `0`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON number rounded to 12 significant digits; non-finite values become `null`.
pub fn json_number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format_sig(x).parse().expect("formatted float parses");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn csv_row(row: &PhaseRow<f64>) -> String {
    format!(
        "{},{},{},{},{}",
        row.m,
        format_sig(row.mu),
        format_sig(row.gamma_pt),
        row.status.as_str(),
        row.evaluations
    )
}

/// Resolved configuration as `# ` comment lines.
pub fn metadata_comment(job: &JobConfig) -> String {
    let text = toml::to_string(&job.metadata()).expect("metadata serializes");
    text.lines().filter(|l| !l.trim().is_empty()).map(|l| format!("# {l}\n")).collect()
}

pub fn render_csv(job: &JobConfig, rows: &[PhaseRow<f64>]) -> String {
    let mut out = metadata_comment(job);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&csv_row(row));
        out.push('\n');
    }
    out
}

pub fn metadata_json(job: &JobConfig) -> Value {
    serde_json::json!({ "config": serde_json::to_value(job.metadata()).expect("metadata serializes") })
}

pub fn render_json<S: Serialize>(value: &S) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok(path)
}

/// Parses a CSV produced by [`render_csv`] back into rows, skipping comments.
pub fn parse_csv(text: &str) -> Result<Vec<PhaseRow<f64>>, CliError> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => return Err(CliError::Parse(format!("expected header `{CSV_HEADER}`, got {other:?}"))),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let bad = || CliError::Parse(format!("row {}: malformed `{line}`", i + 1));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(bad());
            }
            let status = [
                ThresholdStatus::Converged,
                ThresholdStatus::NonMonotone,
                ThresholdStatus::NoUpperBracket,
                ThresholdStatus::AlwaysBroken,
                ThresholdStatus::NoConvergence,
            ]
            .into_iter()
            .find(|s| s.as_str() == f[3])
            .ok_or_else(bad)?;
            Ok(PhaseRow {
                m: f[0].parse().map_err(|_| bad())?,
                mu: f[1].parse().map_err(|_| bad())?,
                gamma_pt: f[2].parse().map_err(|_| bad())?,
                status,
                evaluations: f[4].parse().map_err(|_| bad())?,
            })
        })
        .collect()
}
