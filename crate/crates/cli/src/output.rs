//! Result tables and their CSV / JSON serialisation.
//!
//! Floats are written in scientific notation with 17 significant digits, which
//! round-trips every `f64`. Non-finite values become empty CSV fields and JSON
//! `null`.

use std::io::Write;

use serde_json::Value;

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Float)
    }
}

fn float_text(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Float(x) => float_text(*x).unwrap_or_default(),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json_text(&self) -> String {
        match self {
            Cell::Float(x) => float_text(*x).unwrap_or_else(|| "null".to_string()),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => Value::String(s.clone()).to_string(),
            Cell::Missing => "null".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Metadata {
    pub command: &'static str,
    pub config_sha256: String,
    pub seed: Option<u64>,
    pub generator: &'static str,
}

pub fn write_table(out: &mut dyn Write, table: &Table, meta: &Metadata, format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => write_csv(out, table),
        Format::Json => write_json(out, table, meta),
    }
}

fn write_csv(out: &mut dyn Write, table: &Table) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(&table.columns)?;
    for row in &table.rows {
        writer.write_record(row.iter().map(Cell::csv_text))?;
    }
    writer.flush()
}

fn write_json(out: &mut dyn Write, table: &Table, meta: &Metadata) -> std::io::Result<()> {
    let text = |s: &str| Value::String(s.to_string()).to_string();
    writeln!(out, "{{")?;
    writeln!(out, "  \"metadata\": {{")?;
    writeln!(out, "    \"tool\": {},", text(env!("CARGO_BIN_NAME")))?;
    writeln!(out, "    \"version\": {},", text(env!("CARGO_PKG_VERSION")))?;
    writeln!(out, "    \"command\": {},", text(meta.command))?;
    writeln!(out, "    \"config_sha256\": {},", text(&meta.config_sha256))?;
    let seed = meta.seed.map_or("null".to_string(), |s| s.to_string());
    writeln!(out, "    \"seed\": {seed},")?;
    writeln!(out, "    \"generator\": {},", text(meta.generator))?;
    let columns: Vec<String> = table.columns.iter().map(|c| text(c)).collect();
    writeln!(out, "    \"columns\": [{}]", columns.join(", "))?;
    writeln!(out, "  }},")?;
    write!(out, "  \"rows\": [")?;
    for (i, row) in table.rows.iter().enumerate() {
        let fields: Vec<String> = columns
            .iter()
            .zip(row)
            .map(|(name, cell)| format!("{name}: {}", cell.json_text()))
            .collect();
        let sep = if i == 0 { "" } else { "," };
        write!(out, "{sep}\n    {{{}}}", fields.join(", "))?;
    }
    if !table.rows.is_empty() {
        write!(out, "\n  ")?;
    }
    writeln!(out, "]")?;
    writeln!(out, "}}")
}
