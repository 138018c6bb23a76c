//! Result tables and the JSON summary.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// A measured quantity with its acceptance target.
#[derive(Debug, Clone, Serialize)]
pub struct Target {
    pub name: String,
    pub value: f64,
    pub target: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub metrics: Map<String, Value>,
    pub targets: Vec<Target>,
    /// Extra input bytes (e.g. coefficient files) covered by the hash.
    pub inputs: Vec<Vec<u8>>,
}

impl Report {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), ..Self::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn metric(&mut self, name: &str, value: impl Into<Value>) {
        self.metrics.insert(name.to_string(), value.into());
    }

    /// Records `value <= bound`.
    pub fn at_most(&mut self, name: &str, value: f64, bound: f64) {
        self.targets.push(Target { name: name.into(), value, target: format!("<= {bound:e}"), pass: value <= bound });
    }

    /// Records `|value - want| <= tol`.
    pub fn near(&mut self, name: &str, value: f64, want: f64, tol: f64) {
        self.targets.push(Target {
            name: name.into(),
            value,
            target: format!("{want} +- {tol}"),
            pass: (value - want).abs() <= tol,
        });
    }

    pub fn flag(&mut self, name: &str, ok: bool) {
        self.targets.push(Target { name: name.into(), value: f64::from(u8::from(ok)), target: "1".into(), pass: ok });
    }

    pub fn all_pass(&self) -> bool {
        self.targets.iter().all(|t| t.pass)
    }
}

/// Shortest round-trip decimal form.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Git-style object hash: SHA-256 over `blob <len>\0<content>`.
pub fn content_hash(content: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", content.len()).as_bytes());
    h.update(content);
    format!("sha256:{:x}", h.finalize())
}

fn json_number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or_else(|| Value::String(num(v)))
}

pub fn write(out: &Path, experiment: &str, echo: Value, threads: usize, report: &Report) -> CliResult<()> {
    let mut hashed = serde_json::to_vec(&echo).map_err(|e| CliError::Io(e.to_string()))?;
    for extra in &report.inputs {
        hashed.extend_from_slice(extra);
    }
    let targets: Vec<Value> = report
        .targets
        .iter()
        .map(|t| json!({ "name": t.name, "value": json_number(t.value), "target": t.target, "pass": t.pass }))
        .collect();
    let summary = json!({
        "experiment": experiment,
        "config": echo,
        "input_hash": content_hash(&hashed),
        "threads": threads,
        "csv": format!("{experiment}.csv"),
        "rows": report.rows.len(),
        "metrics": report.metrics,
        "targets": targets,
        "pass": report.all_pass(),
    });

    fs::create_dir_all(out)?;
    let mut w = csv::Writer::from_path(out.join(format!("{experiment}.csv"))).map_err(|e| CliError::Io(e.to_string()))?;
    w.write_record(&report.header).map_err(|e| CliError::Io(e.to_string()))?;
    for r in &report.rows {
        w.write_record(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush()?;
    let mut text = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(out.join("summary.json"), text)?;
    Ok(())
}
