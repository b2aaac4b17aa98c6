//! One-parameter sweeps producing a CSV table.

use std::str::FromStr;

use rayon::prelude::*;

use super::report::{format_number, round_angle};
use super::{analyze, RunOptions, Scenario, ScenarioError};
use crate::error::Error;

/// `count` evenly spaced values from `lo` to `hi` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl SweepRange {
    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => vec![],
            1 => vec![self.lo],
            n => (0..n)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

impl FromStr for SweepRange {
    type Err = String;

    /// Parses `lo:hi:count`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:count, got '{s}'"));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("'{p}' is not a finite number"))
        };
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("'{}' is not a non-negative integer", parts[2]))?;
        Ok(SweepRange {
            lo: num(parts[0])?,
            hi: num(parts[1])?,
            count,
        })
    }
}

/// One evaluated sweep point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub beta: Vec<f64>,
    pub holonomy_residual: Option<f64>,
    pub cyclicity_residual: Option<f64>,
    /// `ok`, `NonCyclic`, `CrossCheckFailed`, `Invalid` or `Error`.
    pub status: String,
}

/// Evaluates the scenario at every value of `param`. Failing points become rows
/// with an explanatory status instead of aborting the sweep. Returns the CSV
/// text and the parsed rows, in range order.
pub fn sweep(
    s: &Scenario,
    param: &str,
    range: SweepRange,
    opts: &RunOptions,
) -> Result<(String, Vec<SweepRow>), ScenarioError> {
    if param == "seed" || !s.system.allowed_params().contains(&param) {
        return Err(ScenarioError::single(
            &format!("/params/{param}"),
            format!("'{param}' is not a sweepable parameter of {}", s.system),
        ));
    }
    let mut base = s.clone();
    base.checks.clear();
    let rows: Vec<SweepRow> = range
        .values()
        .into_par_iter()
        .map(|value| evaluate(&base, param, value, opts))
        .collect();

    let d = s.dim();
    let mut header = vec![param.to_owned()];
    header.extend((1..=d).map(|n| format!("beta_{n}")));
    header.extend(["holonomy_residual", "cyclicity_residual", "status"].map(String::from));
    let mut csv = header.join(",");
    csv.push('\n');
    for row in &rows {
        let mut cells = vec![format_number(row.value)];
        for n in 0..d {
            cells.push(
                row.beta
                    .get(n)
                    .map(|b| format_number(round_angle(*b)))
                    .unwrap_or_default(),
            );
        }
        cells.push(row.holonomy_residual.map(format_number).unwrap_or_default());
        cells.push(
            row.cyclicity_residual
                .map(format_number)
                .unwrap_or_default(),
        );
        cells.push(row.status.clone());
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }
    Ok((csv, rows))
}

fn evaluate(base: &Scenario, param: &str, value: f64, opts: &RunOptions) -> SweepRow {
    let mut row = SweepRow {
        value,
        beta: vec![],
        holonomy_residual: None,
        cyclicity_residual: None,
        status: String::new(),
    };
    let scenario = match base.with_param(param, value) {
        Ok(s) => s,
        Err(_) => {
            row.status = "Invalid".into();
            return row;
        }
    };
    match analyze(&scenario, opts) {
        Ok(a) => {
            row.beta = a.phases.beta();
            row.holonomy_residual = Some(a.phases.holonomy_residual);
            row.cyclicity_residual = Some(a.phases.cyclicity_residual);
            row.status = "ok".into();
        }
        Err(ScenarioError::Pipeline(Error::NotCyclic { deficit, .. })) => {
            row.cyclicity_residual = Some(deficit);
            row.status = "NonCyclic".into();
        }
        Err(ScenarioError::Pipeline(Error::CrossCheckFailed { residual })) => {
            row.holonomy_residual = Some(residual);
            row.status = "CrossCheckFailed".into();
        }
        Err(_) => row.status = "Error".into(),
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        let r: SweepRange = "-1:2:4".parse().unwrap();
        assert_eq!(r.values(), vec![-1.0, 0.0, 1.0, 2.0]);
        let r: SweepRange = "0:1:0".parse().unwrap();
        assert!(r.values().is_empty());
        assert_eq!("0.5:9:1".parse::<SweepRange>().unwrap().values(), vec![0.5]);
        assert!("1:2".parse::<SweepRange>().is_err());
        assert!("a:2:3".parse::<SweepRange>().is_err());
        assert!("1:2:-3".parse::<SweepRange>().is_err());
    }
}
