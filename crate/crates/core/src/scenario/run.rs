//! Running a scenario through the phase pipeline.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::{matrix_entries, round_angle, round_sig, Report};
use super::{Check, Output, Scenario, ScenarioError, System};
use crate::bundle::{holonomy, horizontal_lift, lift_from_propagator_with_reference, LiftCurve};
use crate::error::{Error, Result};
use crate::gates::{
    cnot_equivalence, cyclic_angle, tilted_observable, two_loop_protocol, two_qubit_gate,
    u_phi_beta, CnotEquivalence, GateSpec, TwoQubitSpec,
};
use crate::hamiltonian::HamiltonianSchedule;
use crate::linalg::{ComplexMatrix, Ket};
use crate::obspace::{bloch_chart, GaugeElement, OrthDecomposition};
use crate::phases::{
    geometric_phases_with_lift, multiset_phase_distance, PhaseReport, DEFAULT_CYCLIC_TOL,
};
use crate::propagator::{solve, solve_interval, Propagator};

/// Warp strength of the reparameterization check.
const WARP_STRENGTH: f64 = 0.3;

/// Command-line overrides.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub steps: Option<usize>,
    pub tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

/// Everything computed for a scenario, before anything is written.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: Report,
    pub phases: PhaseReport,
    pub horizontal: LiftCurve,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: Report,
    pub written: Vec<PathBuf>,
}

/// Schedule, propagator and initial frame of a scenario, plus system-specific extras.
struct Setup {
    h: HamiltonianSchedule,
    p: Propagator,
    frame: OrthDecomposition,
    gates: BTreeMap<String, ComplexMatrix>,
    residuals: BTreeMap<String, f64>,
    gate_spec: Option<GateSpec>,
    cnot: Option<CnotEquivalence>,
}

impl Setup {
    fn plain(h: HamiltonianSchedule, p: Propagator, frame: OrthDecomposition) -> Self {
        Setup {
            h,
            p,
            frame,
            gates: BTreeMap::new(),
            residuals: BTreeMap::new(),
            gate_spec: None,
            cnot: None,
        }
    }
}

fn required(s: &Scenario, key: &str) -> f64 {
    s.param(key).expect("schema guarantees required parameters")
}

fn setup(s: &Scenario, steps: usize) -> Result<Setup> {
    match s.system {
        System::ConstantField => {
            let mu_b = required(s, "mu_B");
            let h = HamiltonianSchedule::make_constant_z(mu_b)?;
            let t = s.param("T").unwrap_or(TAU / mu_b.abs());
            let p = solve(&h, t, steps)?;
            let frame = OrthDecomposition::from_observable(&tilted_observable(required(s, "phi")))?;
            let mut out = Setup::plain(h, p, frame);
            out.gates
                .insert("evolution".into(), out.p.final_unitary().clone());
            Ok(out)
        }
        System::RotatingField => {
            let (w0, w1, w) = (required(s, "w0"), required(s, "w1"), required(s, "w"));
            let h = HamiltonianSchedule::make_rotating(w0, w1, w)?;
            let t = s.param("T").unwrap_or(TAU / w.abs());
            let p = solve(&h, t, steps)?;
            let phi = s.param("phi").unwrap_or_else(|| cyclic_angle(w0, w1, w));
            let frame = OrthDecomposition::from_observable(&tilted_observable(phi))?;
            let mut out = Setup::plain(h, p, frame);
            out.gates
                .insert("evolution".into(), out.p.final_unitary().clone());
            Ok(out)
        }
        System::TwoLoop => {
            let (w0, w1, w) = (required(s, "w0"), required(s, "w1"), required(s, "w"));
            let result = two_loop_protocol(w0, w1, w, steps)?;
            let inner = HamiltonianSchedule::make_rotating(w0, w1, w)?;
            let h = HamiltonianSchedule::two_loop(inner, result.period)?;
            let frame = OrthDecomposition::from_observable(&tilted_observable(result.spec.phi))?;
            let mut out = Setup::plain(h, result.propagator, frame);
            out.gates.insert("two_loop".into(), result.gate);
            out.gates
                .insert("u_phi_beta".into(), u_phi_beta(result.spec));
            out.residuals
                .insert("dynamical".into(), result.dynamical_residual);
            out.residuals
                .insert("reconstruction".into(), result.reconstruction_residual);
            out.gate_spec = Some(result.spec);
            Ok(out)
        }
        System::TwoQubitCnot => {
            let spec = TwoQubitSpec {
                control0: GateSpec::new(required(s, "phi0"), required(s, "beta0")),
                control1: GateSpec::new(required(s, "phi1"), required(s, "beta1")),
            };
            // block Hamiltonian whose unit-time evolution is the gate
            let generator = |g: GateSpec| -> Result<HamiltonianSchedule> {
                let (c, sn) = ((g.phi / 2.0).cos(), (g.phi / 2.0).sin());
                let plus = Ket::from_real(&[c, sn])?.projector();
                let minus = Ket::from_real(&[-sn, c])?.projector();
                HamiltonianSchedule::constant((&plus - &minus).scale_real(-g.beta))
            };
            let h = HamiltonianSchedule::make_block_two_qubit(
                generator(spec.control0)?,
                generator(spec.control1)?,
            )?;
            let p = solve(&h, 1.0, steps)?;
            let shift = ComplexMatrix::identity(2).scale_real(3.0);
            let x0 = ComplexMatrix::block_diag(
                &tilted_observable(spec.control0.phi),
                &(&tilted_observable(spec.control1.phi) + &shift),
            );
            let frame = OrthDecomposition::from_observable(&x0)?;
            let formula = two_qubit_gate(spec);
            let simulated = p.final_unitary().clone();
            let mut out = Setup::plain(h, p, frame);
            out.residuals.insert(
                "gate_simulation".into(),
                (&formula - &simulated).frobenius_norm(),
            );
            out.cnot = Some(cnot_equivalence(&formula)?);
            out.gates.insert("two_qubit".into(), formula);
            out.gates.insert("two_qubit_simulated".into(), simulated);
            Ok(out)
        }
        System::CustomTabulated => {
            let tab = s
                .tabulated
                .as_ref()
                .expect("validated scenario has samples");
            let h = HamiltonianSchedule::tabulated(tab.times.clone(), tab.samples.clone())?;
            let t0 = tab.times[0];
            let t1 = t0 + s.param("T").unwrap_or(tab.times[tab.times.len() - 1] - t0);
            let p = solve_interval(&h, t0, t1, steps)?;
            let obs = s
                .observable
                .as_ref()
                .expect("validated scenario has an observable");
            let frame = OrthDecomposition::from_observable(obs)?;
            let mut out = Setup::plain(h, p, frame);
            out.gates
                .insert("evolution".into(), out.p.final_unitary().clone());
            Ok(out)
        }
    }
}

/// Runs the pipeline and the requested checks without touching the filesystem.
pub fn analyze(s: &Scenario, opts: &RunOptions) -> std::result::Result<Analysis, ScenarioError> {
    let steps = opts.steps.unwrap_or_else(|| s.steps());
    if steps < 8 {
        return Err(ScenarioError::single(
            "/params/steps",
            "must be an integer >= 8",
        ));
    }
    let tol = opts.tol.or(s.param("tol")).unwrap_or(DEFAULT_CYCLIC_TOL);
    let mut setup = setup(s, steps)?;
    let reference = OrthDecomposition::standard(s.dim());
    let (phases, horizontal) =
        geometric_phases_with_lift(&setup.p, &setup.h, &setup.frame, &reference, tol)?;

    let mut residuals = std::mem::take(&mut setup.residuals);
    residuals.insert("cyclicity".into(), phases.cyclicity_residual);
    residuals.insert("holonomy".into(), phases.holonomy_residual);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed());
    for check in &s.checks {
        let (name, value) = run_check(*check, &setup, &phases, &reference, tol, steps, &mut rng)?;
        residuals.insert(name.into(), value);
    }

    let report = Report {
        schema: 1,
        scenario: s.name.clone(),
        system: s.system.as_str().into(),
        dim: s.dim(),
        steps: setup.p.steps(),
        theta: phases.theta().into_iter().map(round_angle).collect(),
        gamma: phases.gamma().into_iter().map(round_sig).collect(),
        beta: phases.beta().into_iter().map(round_angle).collect(),
        beta_raw: phases.beta_raw().into_iter().map(round_sig).collect(),
        holonomy_beta: phases
            .holonomy_beta()
            .into_iter()
            .map(round_angle)
            .collect(),
        residuals: residuals
            .into_iter()
            .map(|(k, v)| (k, round_sig(v.abs())))
            .collect(),
        gates: setup
            .gates
            .iter()
            .map(|(k, m)| (k.clone(), matrix_entries(m)))
            .collect(),
        gate_spec: setup
            .gate_spec
            .map(|g| GateSpec::new(round_sig(g.phi), round_angle(g.beta))),
        cnot: setup.cnot.map(|c| CnotEquivalence {
            equivalent: c.equivalent,
            target_phase: round_angle(c.target_phase),
            deviation: round_sig(c.deviation),
        }),
    };
    Ok(Analysis {
        report,
        phases,
        horizontal,
    })
}

fn run_check(
    check: Check,
    setup: &Setup,
    phases: &PhaseReport,
    reference: &OrthDecomposition,
    tol: f64,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(&'static str, f64)> {
    let beta = phases.beta();
    let (t0, t1) = (setup.p.start_time(), setup.p.end_time());
    Ok(match check {
        Check::Holonomy => ("holonomy", phases.holonomy_residual),
        Check::Unitarity => ("unitarity_drift", setup.p.unitarity_drift()),
        Check::Composition => {
            let mid = 0.5 * (t0 + t1);
            let half = (steps / 2).max(8);
            let a = solve_interval(&setup.h, t0, mid, half)?;
            let b = solve_interval(&setup.h, mid, t1, half)?;
            let composed = b.final_unitary() * a.final_unitary();
            let whole = solve_interval(&setup.h, t0, t1, 2 * half)?;
            (
                "composition",
                (&composed - whole.final_unitary()).frobenius_norm(),
            )
        }
        Check::Reparameterization => {
            let span = t1 - t0;
            let shifted = HamiltonianSchedule::shifted(setup.h.clone(), -t0);
            let warped = HamiltonianSchedule::warped(shifted, WARP_STRENGTH, span)?;
            let p = solve(&warped, span, steps)?;
            let (other, _) = geometric_phases_with_lift(&p, &warped, &setup.frame, reference, tol)?;
            (
                "reparameterization",
                multiset_phase_distance(&beta, &other.beta()),
            )
        }
        Check::StartingPoint => {
            let g = GaugeElement::random(reference.dim(), rng);
            let raw = lift_from_propagator_with_reference(&setup.p, &setup.frame, reference)?;
            let hol = holonomy(
                &horizontal_lift(&raw.with_start_gauge(&g)),
                tol.max(DEFAULT_CYCLIC_TOL),
            )?;
            (
                "starting_point",
                multiset_phase_distance(&beta, &hol.phases),
            )
        }
        Check::MeasurementPoint => {
            let u = ComplexMatrix::random_unitary(reference.dim(), rng);
            let other_ref = OrthDecomposition::from_unitary_columns(&u)?;
            let (other, _) =
                geometric_phases_with_lift(&setup.p, &setup.h, &setup.frame, &other_ref, tol)?;
            (
                "measurement_point",
                multiset_phase_distance(&beta, &other.holonomy_beta()),
            )
        }
    })
}

/// Runs a scenario and writes the requested artifacts into `opts.out_dir`
/// (default: the current directory).
pub fn run_scenario(
    s: &Scenario,
    opts: &RunOptions,
) -> std::result::Result<RunOutcome, ScenarioError> {
    let analysis = analyze(s, opts)?;
    let dir = opts.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
    let mut written = Vec::new();
    for output in &s.outputs {
        let (suffix, body) = match output {
            Output::Report => ("report.json", analysis.report.to_json()),
            Output::CurveCsv => ("curve.csv", curve_csv(&analysis.horizontal)?),
            Output::BlochCsv => {
                if s.dim() != 2 {
                    return Err(ScenarioError::single(
                        "/outputs",
                        "bloch_csv is only available for two-level systems",
                    ));
                }
                ("bloch.csv", bloch_csv(&analysis.horizontal)?)
            }
        };
        let path = dir.join(format!("{}_{suffix}", s.name));
        std::fs::write(&path, body).map_err(|e| io_error(&path, e))?;
        written.push(path);
    }
    Ok(RunOutcome {
        report: analysis.report,
        written,
    })
}

fn io_error(path: &Path, e: std::io::Error) -> ScenarioError {
    ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

use super::report::format_number as num;

/// `t, n_x, n_y, n_z, beta_running_1..d`; the Bloch columns appear only for `d = 2`.
pub(crate) fn curve_csv(hor: &LiftCurve) -> Result<String> {
    let d = hor.dim();
    let mut header = vec!["t".to_owned()];
    if d == 2 {
        header.extend(["n_x", "n_y", "n_z"].map(String::from));
    }
    header.extend((1..=d).map(|n| format!("beta_running_{n}")));
    let mut out = header.join(",");
    out.push('\n');
    let running = hor.running_phases();
    for (k, t) in hor.grid().iter().enumerate() {
        let mut row = vec![num(*t)];
        if d == 2 {
            row.extend(bloch_chart(&hor.base_curve()[k])?.map(num));
        }
        row.extend(running[k].iter().map(|b| num(round_angle(*b))));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub(crate) fn bloch_csv(hor: &LiftCurve) -> Result<String> {
    if hor.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: hor.dim(),
        });
    }
    let mut out = String::from("t,n_x,n_y,n_z\n");
    for (t, o) in hor.grid().iter().zip(hor.base_curve()) {
        let n = bloch_chart(o)?;
        out.push_str(&format!(
            "{},{},{},{}\n",
            num(*t),
            num(n[0]),
            num(n[1]),
            num(n[2])
        ));
    }
    Ok(out)
}
