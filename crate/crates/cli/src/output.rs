//! Tabular output in CSV or JSON.
//!
//! CSV: each table is a header row followed by its rows, tables separated by
//! one empty line, LF endings. JSON: one object with `params`, `results` and
//! `warnings` arrays, plus a `summary` array when a second table exists.
//! Floats are written in fixed notation with the requested number of
//! decimals in both formats.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputSpec {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Decimal digits for floating-point fields
    #[arg(long, default_value_t = 10)]
    pub precision: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i128),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn csv(&self, precision: usize) -> String {
        match self {
            Cell::Float(v) => fixed(*v, precision),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self, precision: usize) -> Value {
        match self {
            Cell::Float(v) if v.is_finite() => {
                Value::Number(fixed(*v, precision).parse::<Number>().expect("fixed float is valid JSON"))
            }
            Cell::Float(_) | Cell::Empty => Value::Null,
            Cell::Int(v) => Value::Number(v.to_string().parse::<Number>().expect("integer is valid JSON")),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

fn fixed(v: f64, precision: usize) -> String {
    let s = format!("{v:.precision$}");
    // avoid "-0.000" for values that round to zero
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_owned()
    } else {
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub params: Vec<(&'static str, Cell)>,
    pub results: Table,
    pub summary: Option<Table>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn render(&self, format: Format, precision: usize) -> String {
        match format {
            Format::Csv => self.render_csv(precision),
            Format::Json => self.render_json(precision),
        }
    }

    fn render_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        write_csv_table(&mut out, &self.results, precision);
        if let Some(summary) = &self.summary {
            out.push('\n');
            write_csv_table(&mut out, summary, precision);
        }
        out
    }

    fn render_json(&self, precision: usize) -> String {
        let rows = |table: &Table| {
            Value::Array(
                table
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = table
                            .headers
                            .iter()
                            .zip(row)
                            .map(|(h, c)| ((*h).to_owned(), c.json(precision)))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect(),
            )
        };
        let params = self
            .params
            .iter()
            .map(|(name, value)| {
                let mut obj = Map::new();
                obj.insert("name".into(), Value::String((*name).to_owned()));
                obj.insert("value".into(), value.json(precision));
                Value::Object(obj)
            })
            .collect();

        let mut doc = Map::new();
        doc.insert("params".into(), Value::Array(params));
        doc.insert("results".into(), rows(&self.results));
        if let Some(summary) = &self.summary {
            doc.insert("summary".into(), rows(summary));
        }
        doc.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON value serialises");
        text.push('\n');
        text
    }
}

fn write_csv_table(out: &mut String, table: &Table, precision: usize) {
    out.push_str(&table.headers.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|c| c.csv(precision)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
}

pub fn emit(report: &Report, spec: &OutputSpec) -> Result<()> {
    let text = report.render(spec.format, spec.precision);
    match &spec.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush().context("writing standard output")
        }
    }
}
