//! Run reports: one record per (entry, check), sorted by entry id then check name.

use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::catalog::SCHEMA_VERSION;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckReport {
    pub entry: String,
    pub check: String,
    pub computed: Map<String, Value>,
    pub oracle: Map<String, Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Keys where the oracle or a catalog expectation disagrees with the computed value.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
    /// Wall-clock time; shown in text output only, so JSON stays reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RunReport {
    pub schema_version: u32,
    pub precision: usize,
    pub reports: Vec<CheckReport>,
}

impl RunReport {
    pub fn new(precision: usize, mut reports: Vec<CheckReport>) -> RunReport {
        reports.sort_by(|a, b| (&a.entry, &a.check).cmp(&(&b.entry, &b.check)));
        RunReport { schema_version: SCHEMA_VERSION, precision, reports }
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The reports alone, for comparing runs at different precisions.
    pub fn values_json(&self) -> String {
        serde_json::to_string(&self.reports).expect("reports serialize")
    }
}

fn short(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 60 {
        format!("{}...", s.chars().take(57).collect::<String>())
    } else {
        s
    }
}

impl CheckReport {
    /// One line: status, entry, check, compared values and timing.
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut parts = Vec::new();
        if let Some(e) = &self.error {
            parts.push(format!("error: {e}"));
        }
        for (k, v) in &self.computed {
            match self.oracle.get(k) {
                Some(o) => parts.push(format!("{k} {} (oracle {})", short(v), short(o))),
                None => parts.push(format!("{k} {}", short(v))),
            }
        }
        if !self.mismatches.is_empty() {
            parts.push(format!("mismatched: {}", self.mismatches.join(", ")));
        }
        format!(
            "{status} {} {}: {} [{} ms]",
            self.entry,
            self.check,
            parts.join("; "),
            self.elapsed.as_millis()
        )
    }
}
