//! Machine-readable run reports. Maps are ordered so that identical runs
//! serialize byte-identically.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::constants::ConstantsTable;
use crate::error::{Error, Result};
use crate::quantity::parse_unit_expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Given on the command line or by an override file.
    Input,
    /// Taken from the constants table.
    Constant,
    /// Evaluated by the toolkit.
    Computed,
    /// Published comparison value.
    Reference,
}

impl Source {
    fn label(self) -> &'static str {
        match self {
            Source::Input => "input",
            Source::Constant => "constant",
            Source::Computed => "computed",
            Source::Reference => "reference",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Number {
    pub value: f64,
    pub units: String,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Output {
    Number(Number),
    Text(String),
    Flag(bool),
}

impl Output {
    fn render(&self) -> String {
        match self {
            Output::Number(n) => {
                let units = if n.units == "1" { String::new() } else { format!(" {}", n.units) };
                format!("{:.6e}{units} [{}]", n.value, n.source.label())
            }
            Output::Text(t) => t.clone(),
            Output::Flag(b) => b.to_string(),
        }
    }
}

pub type Row = BTreeMap<String, Output>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, Output>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub tables: BTreeMap<String, Vec<Row>>,
    pub constants_fingerprint: String,
}

fn number(value: f64, units: &str, source: Source) -> Result<Output> {
    parse_unit_expr(units)?;
    if !value.is_finite() {
        return Err(Error::Domain(format!("non-finite report value for units {units}")));
    }
    Ok(Output::Number(Number {
        value,
        units: units.to_string(),
        source,
    }))
}

impl RunReport {
    pub fn new(command: &str, constants: &ConstantsTable) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            tables: BTreeMap::new(),
            constants_fingerprint: constants.fingerprint(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    /// Adds a numeric output; `units` must be a valid unit expression.
    pub fn number(&mut self, key: &str, value: f64, units: &str, source: Source) -> Result<&mut Self> {
        self.outputs.insert(key.to_string(), number(value, units, source)?);
        Ok(self)
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.outputs.insert(key.to_string(), Output::Text(value.into()));
        self
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Self {
        self.outputs.insert(key.to_string(), Output::Flag(value));
        self
    }

    pub fn table(&mut self, name: &str, rows: Vec<Row>) -> &mut Self {
        self.tables.insert(name.to_string(), rows);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "  input {k} = {v}");
        }
        let width = self.outputs.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, v) in &self.outputs {
            let _ = writeln!(s, "  {k:<width$} = {}", v.render());
        }
        for (name, rows) in &self.tables {
            let _ = writeln!(s, "  table {name}:");
            for row in rows {
                let cells: Vec<String> = row.iter().map(|(k, v)| format!("{k}={}", v.render())).collect();
                let _ = writeln!(s, "    {}", cells.join("  "));
            }
        }
        let _ = writeln!(s, "  constants {}", self.constants_fingerprint);
        s
    }
}

/// Builds a table row from numeric cells.
pub fn row(cells: &[(&str, f64, &str, Source)]) -> Result<Row> {
    cells
        .iter()
        .map(|&(k, v, u, src)| Ok((k.to_string(), number(v, u, src)?)))
        .collect()
}
