//! Structured pass/fail results.
//!
//! Every validator and checker in the crate produces a [`Report`]: a tree of
//! named checks, each carrying a status, an optional counterexample and a
//! small table of counters. Reports render to text or JSON deterministically.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// An enumeration budget was exhausted and no fallback certificate applied.
    Capped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Capped => "CAPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub stats: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<Report>,
}

impl Report {
    pub fn pass(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            status: Status::Pass,
            witness: None,
            stats: BTreeMap::new(),
            items: Vec::new(),
        }
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Report {
            witness: Some(witness.into()),
            status: Status::Fail,
            ..Report::pass(check)
        }
    }

    pub fn capped(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Report {
            witness: Some(witness.into()),
            status: Status::Capped,
            ..Report::pass(check)
        }
    }

    /// Pass when `witness` is `None`, fail with the witness otherwise.
    pub fn from_witness(check: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Report::pass(check),
            Some(w) => Report::fail(check, w),
        }
    }

    /// A parent whose status is the worst status among its items.
    pub fn group(check: impl Into<String>, items: Vec<Report>) -> Self {
        let status = items
            .iter()
            .map(|r| r.status)
            .max()
            .unwrap_or(Status::Pass);
        Report {
            status,
            items,
            ..Report::pass(check)
        }
    }

    pub fn with_stat(mut self, key: &str, value: u64) -> Self {
        self.stats.insert(key.to_string(), value);
        self
    }

    pub fn add_stat(&mut self, key: &str, value: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += value;
    }

    pub fn push(&mut self, item: Report) {
        self.status = self.status.max(item.status);
        self.items.push(item);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Whether any node of the tree has status `s`.
    pub fn contains(&self, s: Status) -> bool {
        self.status == s || self.items.iter().any(|r| r.contains(s))
    }

    /// Looks up a direct child by check name.
    pub fn item(&self, check: &str) -> Option<&Report> {
        self.items.iter().find(|r| r.check == check)
    }

    /// Sum of a counter over the whole tree.
    pub fn total_stat(&self, key: &str) -> u64 {
        self.stats.get(key).copied().unwrap_or(0)
            + self.items.iter().map(|r| r.total_stat(key)).sum::<u64>()
    }

    /// Path and witness of the first failing leaf, depth first.
    pub fn first_failure(&self) -> Option<String> {
        if self.passed() {
            return None;
        }
        for item in &self.items {
            if let Some(inner) = item.first_failure() {
                return Some(format!("{}/{}", self.check, inner));
            }
        }
        Some(match &self.witness {
            Some(w) => format!("{}: {}", self.check, w),
            None => self.check.clone(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let _ = write!(out, "{:indent$}{} {}", "", self.status.label(), self.check, indent = depth * 2);
        if !self.stats.is_empty() {
            let stats: Vec<String> = self.stats.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, " [{}]", stats.join(" "));
        }
        if let Some(w) = &self.witness {
            let _ = write!(out, " -- {w}");
        }
        out.push('\n');
        for item in &self.items {
            item.render_into(out, depth + 1);
        }
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
