//! The JSON report and its number formatting.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::ValidationIssue;
use crate::gates::{CnotEquivalence, GateSpec};
use crate::linalg::ComplexMatrix;

/// The published report schema.
pub const REPORT_SCHEMA: &str = include_str!("../../docs/report.schema.json");

const SIGNIFICANT_DIGITS: usize = 12;

/// Result of one scenario run. All numbers carry at most 12 significant digits,
/// so identical inputs serialize to identical bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: u32,
    pub scenario: String,
    pub system: String,
    pub dim: usize,
    pub steps: usize,
    pub theta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
    pub beta_raw: Vec<f64>,
    pub holonomy_beta: Vec<f64>,
    pub residuals: BTreeMap<String, f64>,
    pub gates: BTreeMap<String, Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate_spec: Option<GateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cnot: Option<CnotEquivalence>,
}

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0;
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounds an angle already in `[0, 2 pi)`, folding values that round up to `2 pi` onto 0.
pub fn round_angle(x: f64) -> f64 {
    let r = round_sig(x);
    if r >= round_sig(TAU) {
        0.0
    } else {
        r
    }
}

/// Shortest text of the 12-digit rounding of `x`; scientific notation outside `[1e-4, 1e15)`.
pub fn format_number(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub(crate) fn matrix_entries(m: &ComplexMatrix) -> Vec<[f64; 2]> {
    m.entries()
        .iter()
        .map(|z| [round_sig(z.re), round_sig(z.im)])
        .collect()
}

fn report_validator() -> &'static jsonschema::Validator {
    static VALIDATOR: OnceLock<jsonschema::Validator> = OnceLock::new();
    VALIDATOR.get_or_init(|| {
        let schema: Value = serde_json::from_str(REPORT_SCHEMA).expect("bundled schema is JSON");
        jsonschema::validator_for(&schema).expect("bundled schema compiles")
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    /// Parses report JSON and validates it against the published schema.
    pub fn parse_and_validate(text: &str) -> Result<Report, Vec<ValidationIssue>> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| vec![ValidationIssue::new("", format!("invalid JSON: {e}"))])?;
        let issues: Vec<ValidationIssue> = report_validator()
            .iter_errors(&value)
            .map(|e| ValidationIssue::new(e.instance_path().to_string(), e.to_string()))
            .collect();
        if !issues.is_empty() {
            return Err(issues);
        }
        serde_json::from_value(value).map_err(|e| vec![ValidationIssue::new("", e.to_string())])
    }
}
