//! Rendering of result records as text, CSV or JSON.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::number::round_sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy)]
pub struct OutputSpec {
    pub format: Format,
    pub precision: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Str(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_owned())
    }
}

pub type Record = Vec<(&'static str, Cell)>;

impl Cell {
    fn to_json(&self, precision: usize) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => Value::from(round_sig(*v, precision)),
            Cell::Num(v) => Value::from(non_finite(*v)),
            Cell::Int(v) => Value::from(*v),
            Cell::Str(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }

    fn to_text(&self, precision: usize) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => Value::from(round_sig(*v, precision)).to_string(),
            Cell::Num(v) => non_finite(*v).to_owned(),
            Cell::Int(v) => v.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

fn non_finite(v: f64) -> &'static str {
    if v.is_nan() {
        "nan"
    } else if v > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

/// Writes one record (an object, or key/value lines) or several (an array,
/// or an aligned table).
pub fn emit(
    out: &mut impl Write,
    spec: OutputSpec,
    records: &[Record],
    single: bool,
) -> io::Result<()> {
    let p = spec.precision;
    match spec.format {
        Format::Json => {
            let objects: Vec<Value> = records
                .iter()
                .map(|r| {
                    Value::Object(
                        r.iter()
                            .map(|(k, c)| (k.to_string(), c.to_json(p)))
                            .collect::<Map<_, _>>(),
                    )
                })
                .collect();
            let doc = if single {
                objects.into_iter().next().unwrap_or(Value::Null)
            } else {
                Value::Array(objects)
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.iter().map(|(k, _)| *k))?;
            }
            for r in records {
                w.write_record(r.iter().map(|(_, c)| c.to_text(p)))?;
            }
            w.flush()
        }
        Format::Text if single => {
            let Some(r) = records.first() else {
                return Ok(());
            };
            let width = r.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, c) in r {
                writeln!(out, "{k:<width$}  {}", c.to_text(p))?;
            }
            Ok(())
        }
        Format::Text => {
            let Some(first) = records.first() else {
                return Ok(());
            };
            let mut rows: Vec<Vec<String>> =
                vec![first.iter().map(|(k, _)| k.to_string()).collect()];
            rows.extend(
                records
                    .iter()
                    .map(|r| r.iter().map(|(_, c)| c.to_text(p)).collect()),
            );
            let widths: Vec<usize> = (0..first.len())
                .map(|i| rows.iter().map(|row| row[i].len()).max().unwrap_or(0))
                .collect();
            for row in rows {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end())?;
            }
            Ok(())
        }
    }
}
