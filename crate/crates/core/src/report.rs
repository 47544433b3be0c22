//! Self-contained run reports rendered as human text, JSON or CSV.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::TowerDescription;

/// Bumped whenever a JSON field or CSV column changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A search ran out of budget; nothing was refuted.
    Inconclusive,
    /// No cross-check was requested.
    Unchecked,
}

/// An equality or inequality between two independently computed quantities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, measured: impl ToString, pass: bool) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            measured: measured.to_string(),
            pass,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = S>, S: ToString>(&mut self, row: I) {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub tower: Option<TowerDescription>,
    pub inputs: serde_json::Value,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    /// Lines for human output.
    #[serde(skip)]
    pub summary: Vec<String>,
    /// Rows for CSV output.
    #[serde(skip)]
    pub table: Table,
}

fn json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            tower: None,
            inputs: serde_json::Value::Null,
            seed: None,
            workers: None,
            results: serde_json::Value::Object(Default::default()),
            checks: Vec::new(),
            verdict: Verdict::Unchecked,
            elapsed_ms: 0,
            summary: Vec::new(),
            table: Table::default(),
        }
    }

    pub fn set_inputs<T: Serialize>(&mut self, inputs: &T) {
        self.inputs = json(inputs);
    }

    pub fn result<T: Serialize>(&mut self, key: &str, value: &T) {
        if let serde_json::Value::Object(m) = &mut self.results {
            m.insert(key.to_string(), json(value));
        }
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    /// Pass when every check passed, fail when any failed; `Inconclusive` is kept.
    pub fn finish(&mut self) {
        if self.checks.iter().any(|c| !c.pass) {
            self.verdict = Verdict::Fail;
        } else if self.verdict == Verdict::Unchecked && !self.checks.is_empty() {
            self.verdict = Verdict::Pass;
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => serde_json::to_string_pretty(self)
                .map(|s| s + "\n")
                .map_err(|e| Error::InvalidInput(e.to_string())),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::InvalidInput(e.to_string());
                w.write_record(&self.table.headers).map_err(io)?;
                for r in &self.table.rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
            }
            Format::Human => {
                let mut out = String::new();
                if let Some(t) = &self.tower {
                    out += &format!("tower: p={} e={} m={} (q={}, Q={})\n", t.p, t.e, t.m, t.q, t.order);
                }
                for l in &self.summary {
                    out += l;
                    out.push('\n');
                }
                for c in &self.checks {
                    let tag = if c.pass { "PASS" } else { "FAIL" };
                    out += &format!("{tag} {}: expected {}, measured {}\n", c.name, c.expected, c.measured);
                }
                out += &format!("verdict: {}\n", json(&self.verdict).as_str().unwrap_or_default());
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let mut r = Report::new("x");
        r.finish();
        assert_eq!(r.verdict, Verdict::Unchecked);
        r.check(Check::new("a", 1, 1, true));
        r.finish();
        assert_eq!(r.verdict, Verdict::Pass);
        r.check(Check::new("b", 1, 2, false));
        r.finish();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn renders() {
        let mut r = Report::new("valuation");
        r.table = Table::new(&["source", "valuation"]);
        r.table.push(["criterion", "2"]);
        r.check(Check::new("oracle", 2, 2, true));
        r.finish();
        assert_eq!(r.render(Format::Csv).unwrap(), "source,valuation\ncriterion,2\n");
        assert!(r.render(Format::Human).unwrap().contains("PASS oracle: expected 2, measured 2"));
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["schema"], SCHEMA_VERSION);
    }
}
