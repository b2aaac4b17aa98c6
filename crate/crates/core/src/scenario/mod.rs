//! JSON scenarios: loading, validation, running the phase pipeline, and writing
//! reports and curve samples.
//!
//! A scenario names a physical system, its parameters, optional invariance
//! checks and the artifacts to write. Structural validation uses the published
//! schema in `docs/scenario.schema.json`; numerical preconditions (nonzero
//! fields, Hermitian samples, increasing times) are checked afterwards. Every
//! problem is reported with a JSON pointer to the offending value.

mod report;
mod run;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde_json::Value;

use crate::error::Error;
use crate::linalg::{ComplexMatrix, C64};
use crate::obspace::OrthDecomposition;

pub use report::{format_number, Report, REPORT_SCHEMA};
pub use run::{analyze, run_scenario, Analysis, RunOptions, RunOutcome};
pub use sweep::{sweep, SweepRange, SweepRow};

/// The published scenario schema.
pub const SCENARIO_SCHEMA: &str = include_str!("../../docs/scenario.schema.json");

/// Default number of propagator steps per run.
pub const DEFAULT_STEPS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    ConstantField,
    RotatingField,
    TwoLoop,
    TwoQubitCnot,
    CustomTabulated,
}

impl System {
    pub fn as_str(self) -> &'static str {
        match self {
            System::ConstantField => "constant-field",
            System::RotatingField => "rotating-field",
            System::TwoLoop => "two-loop",
            System::TwoQubitCnot => "two-qubit-cnot",
            System::CustomTabulated => "custom-tabulated",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [
            System::ConstantField,
            System::RotatingField,
            System::TwoLoop,
            System::TwoQubitCnot,
            System::CustomTabulated,
        ]
        .into_iter()
        .find(|sys| sys.as_str() == s)
    }

    /// Parameter keys this system reads.
    pub fn allowed_params(self) -> &'static [&'static str] {
        match self {
            System::ConstantField => &["mu_B", "phi", "T", "steps", "seed", "tol"],
            System::RotatingField => &["w0", "w1", "w", "phi", "T", "steps", "seed", "tol"],
            System::TwoLoop => &["w0", "w1", "w", "steps", "seed", "tol"],
            System::TwoQubitCnot => &["phi0", "beta0", "phi1", "beta1", "steps", "seed", "tol"],
            System::CustomTabulated => &["T", "steps", "seed", "tol"],
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Holonomy,
    Reparameterization,
    StartingPoint,
    MeasurementPoint,
    Unitarity,
    Composition,
}

impl Check {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "holonomy" => Check::Holonomy,
            "reparameterization" => Check::Reparameterization,
            "starting-point" => Check::StartingPoint,
            "measurement-point" => Check::MeasurementPoint,
            "unitarity" => Check::Unitarity,
            "composition" => Check::Composition,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Output {
    Report,
    CurveCsv,
    BlochCsv,
}

impl Output {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "report" => Output::Report,
            "curve_csv" => Output::CurveCsv,
            "bloch_csv" => Output::BlochCsv,
            _ => return None,
        })
    }
}

/// Sampled Hamiltonian of a `custom-tabulated` scenario.
#[derive(Clone, Debug)]
pub struct Tabulated {
    pub times: Vec<f64>,
    pub samples: Vec<ComplexMatrix>,
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub system: System,
    pub params: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub outputs: Vec<Output>,
    pub tabulated: Option<Tabulated>,
    pub observable: Option<ComplexMatrix>,
}

/// One validation problem at a JSON pointer.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationIssue {
    pub pointer: String,
    pub message: String,
}

impl ValidationIssue {
    fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pointer = if self.pointer.is_empty() {
            "/"
        } else {
            &self.pointer
        };
        write!(f, "{pointer}: {}", self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Parse(String),
    #[error("scenario failed validation:\n{}", format_issues(.0))]
    Validation(Vec<ValidationIssue>),
    #[error(transparent)]
    Pipeline(#[from] Error),
}

fn format_issues(issues: &[ValidationIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl ScenarioError {
    /// Process exit code: 2 for invalid input, 3 for non-cyclic evolutions and
    /// failed phase cross-checks, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Parse(_) | ScenarioError::Validation(_) => 2,
            ScenarioError::Pipeline(Error::NotCyclic { .. })
            | ScenarioError::Pipeline(Error::CrossCheckFailed { .. }) => 3,
            _ => 1,
        }
    }

    fn single(pointer: &str, message: impl Into<String>) -> Self {
        ScenarioError::Validation(vec![ValidationIssue::new(pointer, message)])
    }
}

fn scenario_validator() -> &'static jsonschema::Validator {
    static VALIDATOR: OnceLock<jsonschema::Validator> = OnceLock::new();
    VALIDATOR.get_or_init(|| {
        let schema: Value = serde_json::from_str(SCENARIO_SCHEMA).expect("bundled schema is JSON");
        jsonschema::validator_for(&schema).expect("bundled schema compiles")
    })
}

impl Scenario {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self, ScenarioError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, ScenarioError> {
        let mut issues: Vec<ValidationIssue> = scenario_validator()
            .iter_errors(value)
            .map(|e| ValidationIssue::new(e.instance_path().to_string(), e.to_string()))
            .collect();
        if !issues.is_empty() {
            issues.sort_by(|a, b| a.pointer.cmp(&b.pointer));
            return Err(ScenarioError::Validation(issues));
        }

        let system = System::parse(value["system"].as_str().unwrap_or_default())
            .expect("schema restricts the system name");
        let params: BTreeMap<String, f64> = value["params"]
            .as_object()
            .map(|m| {
                m.iter()
                    .map(|(k, v)| (k.clone(), v.as_f64().unwrap_or(f64::NAN)))
                    .collect()
            })
            .unwrap_or_default();
        let names = |key: &str| -> Vec<String> {
            value
                .get(key)
                .and_then(Value::as_array)
                .map(|a| {
                    a.iter()
                        .filter_map(|v| v.as_str().map(str::to_owned))
                        .collect()
                })
                .unwrap_or_default()
        };
        let checks = names("checks")
            .iter()
            .filter_map(|c| Check::parse(c))
            .collect();
        let outputs = match value.get("outputs") {
            Some(_) => names("outputs")
                .iter()
                .filter_map(|o| Output::parse(o))
                .collect(),
            None => vec![Output::Report],
        };

        let tabulated = value
            .get("tabulated")
            .map(|t| parse_tabulated(t, &mut issues));
        let observable = value
            .get("observable")
            .and_then(|m| parse_matrix(m, "/observable", &mut issues));

        let scenario = Scenario {
            name: value["name"].as_str().unwrap_or_default().to_owned(),
            system,
            params,
            checks,
            outputs,
            tabulated: tabulated.flatten(),
            observable,
        };
        scenario.semantic_issues(&mut issues);
        if issues.is_empty() {
            Ok(scenario)
        } else {
            Err(ScenarioError::Validation(issues))
        }
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }

    pub fn steps(&self) -> usize {
        self.param("steps").map_or(DEFAULT_STEPS, |s| s as usize)
    }

    pub fn seed(&self) -> u64 {
        self.param("seed").map_or(7, |s| s as u64)
    }

    /// Hilbert-space dimension of the system.
    pub fn dim(&self) -> usize {
        match self.system {
            System::TwoQubitCnot => 4,
            System::CustomTabulated => self.observable.as_ref().map_or(0, ComplexMatrix::dim),
            _ => 2,
        }
    }

    /// Copy with one parameter replaced, re-running the numerical checks.
    pub fn with_param(&self, key: &str, value: f64) -> Result<Scenario, ScenarioError> {
        let pointer = format!("/params/{key}");
        if key == "seed" || !self.system.allowed_params().contains(&key) {
            return Err(ScenarioError::single(
                &pointer,
                format!("'{key}' is not a sweepable parameter of {}", self.system),
            ));
        }
        let mut next = self.clone();
        next.params.insert(key.to_owned(), value);
        let mut issues = Vec::new();
        next.semantic_issues(&mut issues);
        if issues.is_empty() {
            Ok(next)
        } else {
            Err(ScenarioError::Validation(issues))
        }
    }

    fn semantic_issues(&self, issues: &mut Vec<ValidationIssue>) {
        let allowed = self.system.allowed_params();
        for (key, value) in &self.params {
            let pointer = format!("/params/{key}");
            if !allowed.contains(&key.as_str()) {
                issues.push(ValidationIssue::new(
                    pointer,
                    format!("'{key}' is not used by system {}", self.system),
                ));
            } else if !value.is_finite() {
                issues.push(ValidationIssue::new(pointer, "must be a finite number"));
            }
        }
        if let Some(steps) = self.param("steps") {
            if steps < 8.0 || steps.fract() != 0.0 {
                issues.push(ValidationIssue::new(
                    "/params/steps",
                    "must be an integer >= 8",
                ));
            }
        }
        if let Some(tol) = self.param("tol") {
            if !(tol > 0.0) {
                issues.push(ValidationIssue::new("/params/tol", "must be positive"));
            }
        }
        if let Some(t) = self.param("T") {
            if !(t > 0.0) {
                issues.push(ValidationIssue::new("/params/T", "must be positive"));
            }
        }
        match self.system {
            System::ConstantField => {
                if self.param("mu_B") == Some(0.0) {
                    issues.push(ValidationIssue::new(
                        "/params/mu_B",
                        "field strength must be nonzero",
                    ));
                }
            }
            System::RotatingField | System::TwoLoop => {
                if self.param("w") == Some(0.0) {
                    issues.push(ValidationIssue::new(
                        "/params/w",
                        "angular frequency must be nonzero",
                    ));
                }
            }
            System::TwoQubitCnot => {}
            System::CustomTabulated => self.tabulated_issues(issues),
        }
    }

    fn tabulated_issues(&self, issues: &mut Vec<ValidationIssue>) {
        let (Some(tab), Some(obs)) = (&self.tabulated, &self.observable) else {
            return;
        };
        let dim = obs.dim();
        if !tab.times.windows(2).all(|w| w[1] > w[0]) {
            issues.push(ValidationIssue::new(
                "/tabulated/times",
                "times must be strictly increasing",
            ));
        }
        if tab.samples.len() != tab.times.len() {
            issues.push(ValidationIssue::new(
                "/tabulated/samples",
                format!(
                    "expected {} samples, found {}",
                    tab.times.len(),
                    tab.samples.len()
                ),
            ));
        }
        for (i, m) in tab.samples.iter().enumerate() {
            let pointer = format!("/tabulated/samples/{i}");
            if m.dim() != dim {
                issues.push(ValidationIssue::new(
                    pointer,
                    format!(
                        "dimension {} does not match the observable ({dim})",
                        m.dim()
                    ),
                ));
            } else if !m.is_hermitian(1e-10) {
                issues.push(ValidationIssue::new(pointer, "sample is not Hermitian"));
            }
        }
        if !obs.is_hermitian(1e-10) {
            issues.push(ValidationIssue::new(
                "/observable",
                "observable is not Hermitian",
            ));
        } else if let Err(Error::DegenerateSpectrum { min_gap }) =
            OrthDecomposition::from_observable(obs)
        {
            issues.push(ValidationIssue::new(
                "/observable",
                format!("observable has a degenerate spectrum (gap {min_gap:.3e})"),
            ));
        }
        if let (Some(t), Some(first), Some(last)) =
            (self.param("T"), tab.times.first(), tab.times.last())
        {
            if t > last - first + 1e-12 {
                issues.push(ValidationIssue::new(
                    "/params/T",
                    format!("exceeds the tabulated span {}", last - first),
                ));
            }
        }
    }
}

fn parse_tabulated(t: &Value, issues: &mut Vec<ValidationIssue>) -> Option<Tabulated> {
    let times: Vec<f64> = t["times"]
        .as_array()?
        .iter()
        .map(|v| v.as_f64().unwrap_or(f64::NAN))
        .collect();
    let samples = t["samples"]
        .as_array()?
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(m, &format!("/tabulated/samples/{i}"), issues))
        .collect::<Option<Vec<_>>>()?;
    Some(Tabulated { times, samples })
}

/// Reads a square matrix written as rows of `[re, im]` pairs.
fn parse_matrix(
    m: &Value,
    pointer: &str,
    issues: &mut Vec<ValidationIssue>,
) -> Option<ComplexMatrix> {
    let rows = m.as_array()?;
    let dim = rows.len();
    let mut parsed = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array()?;
        if row.len() != dim {
            issues.push(ValidationIssue::new(
                format!("{pointer}/{i}"),
                format!("row has {} entries, matrix must be {dim}x{dim}", row.len()),
            ));
            return None;
        }
        parsed.push(
            row.iter()
                .map(|z| {
                    C64::new(
                        z[0].as_f64().unwrap_or(f64::NAN),
                        z[1].as_f64().unwrap_or(f64::NAN),
                    )
                })
                .collect(),
        );
    }
    ComplexMatrix::from_rows(&parsed).ok()
}
