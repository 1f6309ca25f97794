use std::io::Write;
use std::path::Path;

use heisenberg_core::curves::fmt17;
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Assertion {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }

    /// `|value − expected| ≤ tol`.
    pub fn close(name: &str, value: f64, expected: f64, tol: f64) -> Self {
        let err = (value - expected).abs();
        Self::new(
            name,
            err <= tol,
            format!("value {value}, expected {expected}, error {err:e}, tolerance {tol:e}"),
        )
    }

    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self::new(
            name,
            value <= bound,
            format!("value {value:e}, bound {bound:e}"),
        )
    }
}

/// Tabular artifact for CSV output.
#[derive(Debug, Clone)]
pub enum Table {
    /// Pre-rendered CSV, header included.
    Raw(String),
    Rows {
        header: Vec<&'static str>,
        rows: Vec<Vec<f64>>,
    },
}

impl Table {
    pub fn render(&self) -> String {
        match self {
            Table::Raw(s) => s.clone(),
            Table::Rows { header, rows } => {
                let mut out = header.join(",");
                out.push('\n');
                for r in rows {
                    out.push_str(&r.iter().map(|v| fmt17(*v)).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
                out
            }
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub assertions: Vec<Assertion>,
    pub table: Option<Table>,
    pub default_format: Format,
}

impl Report {
    pub fn new(command: &'static str, default_format: Format) -> Self {
        Self {
            command,
            parameters: Map::new(),
            results: Value::Null,
            assertions: Vec::new(),
            table: None,
            default_format,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "assertions": self.assertions.iter().map(|a| json!({
                "name": a.name,
                "pass": a.pass,
                "detail": a.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, format: Option<Format>) -> Result<String, CliError> {
        match format.unwrap_or(self.default_format) {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self
                .table
                .as_ref()
                .map(Table::render)
                .ok_or_else(|| CliError::Config(format!("{} has no CSV output", self.command))),
        }
    }

    pub fn write(&self, format: Option<Format>, out: Option<&Path>) -> Result<(), CliError> {
        let text = self.render(format)?;
        match out {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                match stdout.write_all(text.as_bytes()) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                        Err(CliError::Io("stdout".into(), e))
                    }
                    _ => Ok(()),
                }
            }
        }
    }
}
