//! Deterministic CSV/JSON emission.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_f64(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Value::from(*x),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.clone()),
        }
    }
}

/// 17 significant digits; round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> =
                        self.header.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// What a subcommand produces.
#[derive(Debug, Clone)]
pub struct Report {
    pub stem: &'static str,
    pub meta: Value,
    pub table: Option<Table>,
    /// Preformatted CSV body that replaces the table in CSV mode.
    pub csv_override: Option<String>,
}

fn write(path: PathBuf, text: &str) -> Result<PathBuf> {
    std::fs::write(&path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
    Ok(path)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes the report under `dir`; returns the written paths.
pub fn emit(report: &Report, dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    match format {
        Format::Csv => {
            let body = report.csv_override.clone().or_else(|| report.table.as_ref().map(Table::to_csv));
            if let Some(body) = body {
                written.push(write(dir.join(format!("{}.csv", report.stem)), &body)?);
            }
            written.push(write(dir.join(format!("{}.meta.json", report.stem)), &pretty(&report.meta))?);
        }
        Format::Json => {
            let mut doc = report.meta.clone();
            if let (Some(t), Value::Object(obj)) = (&report.table, &mut doc) {
                obj.insert("rows".into(), t.to_json());
            }
            written.push(write(dir.join(format!("{}.json", report.stem)), &pretty(&doc))?);
        }
    }
    Ok(written)
}
