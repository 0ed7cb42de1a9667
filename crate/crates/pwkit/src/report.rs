//! JSON report of check records.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

/// How a defect is compared against its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    /// Passes when `defect < threshold`.
    Below,
    /// Passes when `defect > threshold`.
    Above,
    /// Passes when `defect <= threshold`.
    AtMost,
}

impl Comparison {
    pub fn passes(self, defect: f64, threshold: f64) -> bool {
        match self {
            Comparison::Below => defect < threshold,
            Comparison::Above => defect > threshold,
            Comparison::AtMost => defect <= threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The statement being certified, or "plumbing".
    pub anchor: String,
    pub defect: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub pass: bool,
    /// Wall-clock seconds.
    pub runtime: f64,
    /// Mesh sizes and per-case details.
    pub mesh: BTreeMap<String, serde_json::Value>,
}

impl CheckRecord {
    pub fn new(name: &str, anchor: &str, defect: f64, threshold: f64, comparison: Comparison) -> Self {
        Self {
            name: name.to_owned(),
            anchor: anchor.to_owned(),
            defect,
            threshold,
            comparison,
            pass: defect.is_finite() && comparison.passes(defect, threshold),
            runtime: 0.0,
            mesh: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.mesh.insert(key.to_owned(), serde_json::to_value(value).expect("serializable metadata"));
        self
    }

    /// Record for a check whose computation failed.
    pub fn failed(name: &str, anchor: &str, error: &anyhow::Error) -> Self {
        let mut r = Self::new(name, anchor, f64::NAN, 0.0, Comparison::Below);
        r.pass = false;
        r.with("error", format!("{error:#}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub preset: String,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn pass_vector(&self) -> Vec<(String, bool)> {
        self.checks.iter().map(|c| (c.name.clone(), c.pass)).collect()
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every runtime zeroed, for replay comparisons.
    pub fn without_runtimes(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.runtime = 0.0;
        }
        r
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, self.to_json()).with_context(|| format!("writing report {}", path.display()))
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading report {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let op = match c.comparison {
                Comparison::Below => "<",
                Comparison::Above => ">",
                Comparison::AtMost => "<=",
            };
            out.push_str(&format!(
                "{:<5} {:<28} {:>11.3e} {op} {:<9.1e} {:>7.2}s  {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.defect,
                c.threshold,
                c.runtime,
                c.anchor
            ));
        }
        out
    }
}
