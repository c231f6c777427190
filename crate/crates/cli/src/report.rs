//! Command reports and their serialization.

use crate::config::{Format, RunConfig};
use serde_json::{Map, Value};
use sharp_ineq::report::{Record, Table};
use sharp_ineq::Error;
use std::fmt;

/// Outcome classes, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

/// Error raised by a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag, config value or mathematical precondition.
    Usage(String),
    /// The computation could not reach the accuracy needed for a verdict.
    Inconclusive(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Inconclusive(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Inconclusive(m) => write!(f, "inconclusive: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Accuracy { .. }
            | Error::Regularity(_)
            | Error::Range(_)
            | Error::InsufficientData(_)
            | Error::Stiffness(_) => CliError::Inconclusive(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// One named suite inside a command.
#[derive(Debug, Clone)]
pub struct Suite {
    pub name: String,
    pub status: Status,
    pub summary: Record,
}

impl Suite {
    pub fn new(name: &str, status: Status, summary: Record) -> Self {
        Self { name: name.to_string(), status, summary }
    }
}

/// Everything a command emits.
#[derive(Debug, Clone)]
pub struct Report {
    pub config: RunConfig,
    pub tolerances: Record,
    pub results: Record,
    pub suites: Vec<Suite>,
    pub tables: Vec<(String, Table)>,
}

impl Report {
    pub fn new(config: &RunConfig) -> Self {
        Self {
            config: config.clone(),
            tolerances: Record::new(),
            results: Record::new(),
            suites: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        self.suites.iter().map(|s| s.status).max().unwrap_or(Status::Pass)
    }

    fn suites_with(&self, status: Status) -> String {
        self.suites.iter().filter(|s| s.status == status).map(|s| s.name.as_str()).collect::<Vec<_>>().join(";")
    }

    /// Flat summary: status, seed, results, then every suite under its name.
    fn summary(&self) -> Record {
        let status = self.status();
        let mut r = Record::new()
            .with("command", self.config.command.as_str())
            .with("status", status.as_str())
            .with("exit_code", status.exit_code() as usize)
            .with("seed", self.config.seed)
            .with("failed_suites", self.suites_with(Status::Fail))
            .with("inconclusive_suites", self.suites_with(Status::Inconclusive));
        r.merge_prefixed("config", &self.config.to_record());
        r.merge_prefixed("tol", &self.tolerances);
        for (k, v) in self.results.entries() {
            r.set(k.clone(), v.clone());
        }
        for s in &self.suites {
            r.set(format!("{}.status", s.name), s.status.as_str());
            r.merge_prefixed(&s.name, &s.summary);
        }
        r
    }

    pub fn to_json(&self) -> String {
        let status = self.status();
        let mut doc = Map::new();
        doc.insert("command".into(), Value::String(self.config.command.clone()));
        doc.insert("status".into(), Value::String(status.as_str().into()));
        doc.insert("exit_code".into(), Value::from(status.exit_code()));
        doc.insert("seed".into(), Value::from(self.config.seed));
        doc.insert("config".into(), self.config.to_record().to_json_value());
        doc.insert("tolerances".into(), self.tolerances.to_json_value());
        doc.insert("results".into(), self.results.to_json_value());
        let mut suites = Map::new();
        for s in &self.suites {
            let mut v = s.summary.to_json_value();
            if let Value::Object(m) = &mut v {
                m.insert("status".into(), Value::String(s.status.as_str().into()));
            }
            suites.insert(s.name.clone(), v);
        }
        doc.insert("suites".into(), Value::Object(suites));
        let mut tables = Map::new();
        for (name, t) in &self.tables {
            tables.insert(name.clone(), t.to_json_value());
        }
        doc.insert("tables".into(), Value::Object(tables));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("reports always serialize");
        text.push('\n');
        text
    }

    /// Summary as header and row, then each table after a blank line and a `# name` line.
    pub fn to_csv(&self) -> String {
        let mut out = self.summary().to_csv();
        for (name, t) in &self.tables {
            out.push_str(&format!("\n# {name}\n"));
            out.push_str(&t.to_csv());
        }
        out
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}
