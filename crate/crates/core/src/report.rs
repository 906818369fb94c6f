//! Pass/fail reports produced by the verification entry points.
//!
//! A report is a flat list of named sections. Verification failures are
//! report entries carrying a counterexample, never panics or `Err`s, so a
//! caller can always render the full picture. Reports are deterministic
//! given the same inputs and seed; when sampling is involved the generator
//! name and seed are recorded in the report itself.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
            Status::Info => write!(f, "INFO"),
        }
    }
}

/// One named check with its outcome and optional structured payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

/// The seeded generator used for any sampling that fed a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngInfo {
    pub name: String,
    pub seed: u64,
}

impl RngInfo {
    pub fn chacha12(seed: u64) -> Self {
        RngInfo { name: "chacha12".to_owned(), seed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Report {
    pub sections: Vec<Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<RngInfo>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn with_rng(rng: RngInfo) -> Self {
        Report { sections: Vec::new(), rng: Some(rng) }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn pass(&mut self, name: impl Into<String>, details: impl Into<String>) {
        self.push(Section {
            name: name.into(),
            status: Status::Pass,
            details: details.into(),
            counterexample: None,
            data: None,
        });
    }

    pub fn fail(
        &mut self,
        name: impl Into<String>,
        details: impl Into<String>,
        counterexample: impl Into<String>,
    ) {
        self.push(Section {
            name: name.into(),
            status: Status::Fail,
            details: details.into(),
            counterexample: Some(counterexample.into()),
            data: None,
        });
    }

    pub fn info(&mut self, name: impl Into<String>, details: impl Into<String>) {
        self.push(Section {
            name: name.into(),
            status: Status::Info,
            details: details.into(),
            counterexample: None,
            data: None,
        });
    }

    /// Records a check outcome: `pass` when the counterexample is absent.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        details: impl Into<String>,
        counterexample: Option<String>,
    ) {
        match counterexample {
            None => self.pass(name, details),
            Some(cx) => self.fail(name, details, cx),
        }
    }

    /// True when no section failed.
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.status != Status::Fail)
    }

    /// Appends all sections of `other`, keeping our rng record.
    pub fn extend(&mut self, other: Report) {
        self.sections.extend(other.sections);
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sections {
            writeln!(f, "[{}] {} — {}", s.status, s.name, s.details)?;
            if let Some(cx) = &s.counterexample {
                writeln!(f, "       counterexample: {cx}")?;
            }
        }
        Ok(())
    }
}
