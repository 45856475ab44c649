use std::path::Path;
use std::str::FromStr;

use rug::Float;
use serde_json::{Map, Number, Value};

use super::sweep::ComparisonRecord;
use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 10] = [
    "n",
    "lambda_n",
    "v",
    "exact_log10",
    "exact_phase_quarter",
    "asym_log10",
    "asym_phase_quarter",
    "rel_err",
    "predicted_rate",
    "normalized_err",
];

/// Significant digits of every emitted real.
pub const EMIT_DIGITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

/// Scientific notation with [`EMIT_DIGITS`] significant digits; `None` for
/// infinities and NaN.
pub fn format_real(x: &Float) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    // rug counts significant digits, not digits after the point.
    Some(format!("{:.*e}", EMIT_DIGITS, x))
}

enum Cell {
    Int(u64),
    Real(Option<String>),
}

fn cells(r: &ComparisonRecord) -> [Cell; 10] {
    [
        Cell::Int(r.n),
        Cell::Real(format_real(&r.lambda_n)),
        Cell::Real(format_real(&r.v)),
        Cell::Real(format_real(&r.exact.log10_abs())),
        Cell::Int(r.exact.quarter_phase().into()),
        Cell::Real(format_real(&r.asym.log10_abs())),
        Cell::Int(r.asym.quarter_phase().into()),
        Cell::Real(format_real(&r.rel_err)),
        Cell::Real(format_real(&r.predicted_rate)),
        Cell::Real(format_real(&r.normalized_err)),
    ]
}

/// Header plus one line per record. Zero values have `log10 = -inf`.
pub fn render_csv(records: &[ComparisonRecord]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for r in records {
        let row: Vec<String> = cells(r)
            .into_iter()
            .map(|c| match c {
                Cell::Int(i) => i.to_string(),
                Cell::Real(Some(s)) => s,
                Cell::Real(None) => "-inf".to_string(),
            })
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Array of objects keyed like the CSV columns; `-inf` becomes `null`.
pub fn render_json(records: &[ComparisonRecord]) -> String {
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            let mut obj = Map::new();
            for (key, c) in CSV_COLUMNS.iter().zip(cells(r)) {
                let v = match c {
                    Cell::Int(i) => Value::from(i),
                    Cell::Real(Some(s)) => Value::Number(Number::from_str(&s).expect("formatted number parses")),
                    Cell::Real(None) => Value::Null,
                };
                obj.insert((*key).to_string(), v);
            }
            Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("values serialize");
    s.push('\n');
    s
}

pub fn render(records: &[ComparisonRecord], format: Format) -> String {
    match format {
        Format::Csv => render_csv(records),
        Format::Json => render_json(records),
    }
}

pub fn emit(records: &[ComparisonRecord], format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, render(records, format))?;
    Ok(())
}
