//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }
}

/// Either a rendered expression or a residual norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residual {
    Norm(f64),
    Text(String),
}

impl From<f64> for Residual {
    fn from(x: f64) -> Self {
        Residual::Norm(x)
    }
}

impl From<String> for Residual {
    fn from(s: String) -> Self {
        Residual::Text(s)
    }
}

impl From<&str> for Residual {
    fn from(s: &str) -> Self {
        Residual::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    pub verdict: Verdict,
    pub residual: Residual,
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
}

impl Case {
    pub fn new(name: impl Into<String>, verdict: Verdict, residual: impl Into<Residual>) -> Self {
        Case { name: name.into(), verdict, residual: residual.into(), details: BTreeMap::new() }
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub tool_version: String,
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, tool_version: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            cases: Vec::new(),
            summary: Summary::default(),
            tool_version: tool_version.into(),
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn push(&mut self, case: Case) {
        match case.verdict {
            Verdict::Pass => self.summary.passed += 1,
            Verdict::Fail => self.summary.failed += 1,
            Verdict::Error => self.summary.errored += 1,
        }
        self.cases.push(case);
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.errored == 0
    }

    /// Whether `summary` matches the case tallies.
    pub fn is_consistent(&self) -> bool {
        let count = |v| self.cases.iter().filter(|c| c.verdict == v).count();
        self.summary
            == Summary { passed: count(Verdict::Pass), failed: count(Verdict::Fail), errored: count(Verdict::Error) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn residual_text(r: &Residual) -> String {
    match r {
        Residual::Norm(x) => format!("{x:.3e}"),
        Residual::Text(s) => s.clone(),
    }
}

/// Serializes the report. Output is a pure function of the report.
pub fn emit_report(report: &VerificationReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "suite: {}", report.suite);
            for case in &report.cases {
                let _ = writeln!(s, "[{}] {}: {}", case.verdict.as_str(), case.name, residual_text(&case.residual));
                for (k, v) in &case.details {
                    let _ = writeln!(s, "    {k}: {}", value_text(v));
                }
            }
            let sm = report.summary;
            let _ = writeln!(s, "summary: {} passed, {} failed, {} errored", sm.passed, sm.failed, sm.errored);
            if let Some(seed) = report.seed {
                let _ = writeln!(s, "seed: {seed}");
            }
            let _ = writeln!(s, "tool_version: {}", report.tool_version);
            s.into_bytes()
        }
    }
}
