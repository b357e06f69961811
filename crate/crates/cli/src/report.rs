use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one checked claim or sub-case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio_or_defect: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl VerificationReport {
    pub fn new(claim_id: &str, case: impl Into<String>) -> Self {
        Self {
            claim_id: claim_id.to_owned(),
            case: case.into(),
            lhs: 0.0,
            rhs: 0.0,
            ratio_or_defect: 0.0,
            tolerance: 0.0,
            passed: false,
            runtime_ms: 0,
            details: Value::Null,
        }
    }

    pub fn sides(mut self, lhs: f64, rhs: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self
    }

    /// Sets the measured quantity and its threshold; `passed` still has to be decided.
    pub fn measure(mut self, ratio_or_defect: f64, tolerance: f64) -> Self {
        self.ratio_or_defect = ratio_or_defect;
        self.tolerance = tolerance;
        self
    }

    pub fn pass_if(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn runtime(mut self, runtime_ms: u64) -> Self {
        self.runtime_ms = runtime_ms;
        self
    }

    pub fn details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

/// Reports as pretty JSON with `runtime_ms` zeroed, for comparing runs.
pub fn without_timing(reports: &[VerificationReport]) -> Vec<VerificationReport> {
    reports.iter().cloned().map(|r| VerificationReport { runtime_ms: 0, ..r }).collect()
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}
