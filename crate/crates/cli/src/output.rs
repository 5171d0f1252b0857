use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use gf2nbasis_core::tables::{EnbRow, ExtRow, GnbRow};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u128),
    Float(f64),
    Str(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.1}"),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => u64::try_from(*v)
                .map(Value::from)
                .unwrap_or_else(|_| Value::String(v.to_string())),
            Cell::Float(v) => Value::from(*v),
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Null => Value::Null,
        }
    }
}

impl<T: Into<u128>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, |x| Cell::Int(x.into()))
    }
}

fn int(v: impl Into<u128>) -> Cell {
    Cell::Int(v.into())
}

/// Rows with named columns. `primary` is the column printed alone by the
/// text format when there is a single row.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub primary: Option<usize>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
            primary: None,
        }
    }

    pub fn single(header: &[&'static str], row: Vec<Cell>, primary: usize) -> Self {
        Self {
            header: header.to_vec(),
            rows: vec![row],
            primary: Some(primary),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.csv(),
            Format::Json => Ok(self.json()),
            Format::Text => Ok(self.text()),
        }
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn json(&self) -> String {
        let objects: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.json()))
                    .collect();
                Value::Object(map)
            })
            .collect();
        let value = match (self.primary, objects.len()) {
            (Some(_), 1) => objects.into_iter().next().unwrap(),
            _ => Value::Array(objects),
        };
        let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
        s.push('\n');
        s
    }

    fn text(&self) -> String {
        if let (Some(p), [row]) = (self.primary, self.rows.as_slice()) {
            let v = row[p].text();
            return format!("{}\n", if v.is_empty() { "none" } else { &v });
        }
        let cells: Vec<Vec<String>> = std::iter::once(self.header.iter().map(|h| h.to_string()).collect())
            .chain(self.rows.iter().map(|r| r.iter().map(Cell::text).collect()))
            .collect();
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| cells.iter().map(|r| r[i].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

pub fn gnb_table(rows: &[GnbRow]) -> Table {
    let mut t = Table::new(&["n", "k"]);
    t.rows = rows.iter().map(|r| vec![int(r.n), int(r.k)]).collect();
    t
}

pub fn enb_table(rows: &[EnbRow]) -> Table {
    let mut t = Table::new(&["n", "embed"]);
    t.rows = rows.iter().map(|r| vec![int(r.n), int(r.embed)]).collect();
    t
}

pub fn ext_table(rows: &[ExtRow]) -> Table {
    let mut t = Table::new(&[
        "n",
        "as_d",
        "as_k",
        "witt_d",
        "witt_k",
        "kummer_d",
        "kummer_k",
        "kummer_admissible",
        "enb_embed",
    ]);
    t.rows = rows
        .iter()
        .map(|r| {
            vec![
                int(r.n),
                r.as2.map(|p| p.0).into(),
                r.as2.map(|p| p.1).into(),
                r.witt4.map(|p| p.0).into(),
                r.witt4.map(|p| p.1).into(),
                r.kummer.map(|p| p.0).into(),
                r.kummer.map(|p| p.1).into(),
                r.kummer_admissible.map_or(Cell::Null, Cell::Bool),
                r.enb_embed.into(),
            ]
        })
        .collect();
    t
}

/// `-` is standard output.
pub fn write_out(path: &Path, content: &str) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(content.as_bytes())?;
        stdout.flush()?;
    } else {
        std::fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
