//! Pass/fail records produced by the verifiers, and their renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub params: String,
    pub pass: bool,
    /// First discrepancy, when the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Set when the check was abandoned because it would exceed the budget.
    #[serde(skip)]
    pub over_budget: bool,
}

impl Check {
    pub fn new(identity: impl Into<String>, params: impl Into<String>, witness: Option<String>) -> Self {
        Check {
            identity: identity.into(),
            params: params.into(),
            pass: witness.is_none(),
            witness,
            over_budget: false,
        }
    }

    /// A check that could not be evaluated; the error becomes the witness.
    pub fn errored(identity: impl Into<String>, params: impl Into<String>, err: &Error) -> Self {
        Check {
            identity: identity.into(),
            params: params.into(),
            pass: false,
            witness: Some(format!("error: {err}")),
            over_budget: matches!(err, Error::BudgetExceeded(_)),
        }
    }

    pub fn from_result(identity: &str, params: &str, outcome: Result<Option<String>>) -> Self {
        match outcome {
            Ok(w) => Check::new(identity, params, w),
            Err(e) => Check::errored(identity, params, &e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    pub fn from_name(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Some check failed, and every failure was a budget refusal.
    pub fn only_budget_failures(&self) -> bool {
        let mut failures = self.failures().peekable();
        failures.peek().is_some() && failures.all(|c| c.over_budget)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    /// One JSON object per line.
    fn render_json(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&serde_json::to_string(c).expect("checks serialise"));
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["identity", "params", "pass", "witness"]).expect("in-memory write");
        for c in &self.checks {
            let pass = if c.pass { "true" } else { "false" };
            w.write_record([c.identity.as_str(), c.params.as_str(), pass, c.witness.as_deref().unwrap_or("")])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 input")
    }

    fn render_table(&self) -> String {
        let header = ["identity", "params", "pass", "witness"];
        let rows: Vec<[String; 4]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.identity.clone(),
                    c.params.clone(),
                    if c.pass { "PASS" } else { "FAIL" }.to_string(),
                    c.witness.clone().unwrap_or_default(),
                ]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: &[&str], out: &mut String| {
            let padded: Vec<String> =
                cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&header, &mut out);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        let rule: Vec<&str> = rule.iter().map(String::as_str).collect();
        line(&rule, &mut out);
        for r in &rows {
            let cells: Vec<&str> = r.iter().map(String::as_str).collect();
            line(&cells, &mut out);
        }
        out
    }
}
