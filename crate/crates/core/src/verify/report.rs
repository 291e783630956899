use std::fmt::Write as _;

use serde::Serialize;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Milliseconds; only recorded when timing is enabled.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl CheckRecord {
    /// Passes when `|value - reference| <= tolerance`.
    pub fn close(name: impl Into<String>, value: f64, reference: f64, tolerance: f64) -> Self {
        CheckRecord {
            name: name.into(),
            value,
            reference,
            tolerance,
            passed: (value - reference).abs() <= tolerance,
            detail: None,
            runtime_ms: None,
        }
    }

    /// Passes when `value <= tolerance`; for residuals and error magnitudes.
    pub fn bounded(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckRecord {
            name: name.into(),
            value,
            reference: 0.0,
            tolerance,
            passed: value <= tolerance,
            detail: None,
            runtime_ms: None,
        }
    }

    /// Pass/fail flag encoded as value 1 or 0 against reference 1.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        CheckRecord {
            name: name.into(),
            value: if ok { 1.0 } else { 0.0 },
            reference: 1.0,
            tolerance: 0.0,
            passed: ok,
            detail: None,
            runtime_ms: None,
        }
    }

    pub fn failed(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        CheckRecord {
            name: name.into(),
            value: f64::NAN,
            reference: f64::NAN,
            tolerance: f64::NAN,
            passed: false,
            detail: Some(err.to_string()),
            runtime_ms: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// All checks in execution order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl Report {
    pub fn new(checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report { checks, passed }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// Fixed-width table with the same fields as the JSON form.
    pub fn to_table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(5);
        let timing = self.checks.iter().any(|c| c.runtime_ms.is_some());
        let mut out = String::new();
        let _ = write!(
            out,
            "{:<width$}  {:>23}  {:>23}  {:>9}  {:<4}",
            "check", "value", "reference", "tolerance", "pass"
        );
        if timing {
            let _ = write!(out, "  {:>11}", "runtime_ms");
        }
        out.push_str("  detail\n");
        for c in &self.checks {
            let _ = write!(
                out,
                "{:<width$}  {:>23e}  {:>23e}  {:>9e}  {:<4}",
                c.name,
                c.value,
                c.reference,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            );
            if timing {
                match c.runtime_ms {
                    Some(ms) => {
                        let _ = write!(out, "  {ms:>11.3}");
                    }
                    None => {
                        let _ = write!(out, "  {:>11}", "-");
                    }
                }
            }
            let _ = write!(out, "  {}", c.detail.as_deref().unwrap_or(""));
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        );
        out
    }
}
