use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use obsphase::linalg::phase_distance;
use obsphase::scenario::Report;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn obsphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obsphase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_scenario(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("scenario.json");
    std::fs::write(&path, body).unwrap();
    path
}

/// Parses the CSV into `(header, rows)`.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn run_writes_a_valid_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = obsphase(&[
        "run",
        path_str(&scenario("constant_field.json")),
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let listed = String::from_utf8(out.stdout).unwrap();
    assert_eq!(listed.lines().count(), 3);

    let text = std::fs::read_to_string(dir.path().join("constant_field_report.json")).unwrap();
    let report = Report::parse_and_validate(&text).unwrap();
    assert_eq!(report.to_json(), text);
    assert!(phase_distance(report.beta[0], PI / 2.0) < 1e-9);
    assert!(phase_distance(report.beta[1], 1.5 * PI) < 1e-9);
    for key in [
        "holonomy",
        "reparameterization",
        "starting_point",
        "measurement_point",
    ] {
        assert!(report.residuals[key] < 1e-6, "{key}");
    }
    assert!(report.residuals["unitarity_drift"] <= 1e-12);

    let curve = std::fs::read_to_string(dir.path().join("constant_field_curve.csv")).unwrap();
    let (header, rows) = parse_csv(&curve);
    assert_eq!(
        header,
        ["t", "n_x", "n_y", "n_z", "beta_running_1", "beta_running_2"]
    );
    assert_eq!(rows.len(), 4097);
    let bloch = std::fs::read_to_string(dir.path().join("constant_field_bloch.csv")).unwrap();
    assert!(bloch.starts_with("t,n_x,n_y,n_z\n"));
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let file = scenario("rotating_field.json");
    for dir in [&a, &b] {
        let out = obsphase(&[
            "run",
            path_str(&file),
            "--out",
            path_str(dir.path()),
            "--steps",
            "1024",
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    for name in [
        "rotating_field_report.json",
        "rotating_field_curve.csv",
        "rotating_field_bloch.csv",
    ] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn invalid_scenarios_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"schema":1,"name":"x","system":"constant-field","params":{"mu_B":1,"phi":0.5,"bogus":1}}"#,
            "bogus",
        ),
        (
            r#"{"schema":1,"name":"x","system":"constant-field","params":{"phi":0.5}}"#,
            "/params",
        ),
        (
            r#"{"schema":1,"name":"x","system":"constant-field","params":{"mu_B":0,"phi":0.5}}"#,
            "/params/mu_B",
        ),
        (
            r#"{"schema":1,"name":"x","system":"warp-drive","params":{}}"#,
            "/system",
        ),
        (r#"{"schema":1,"name":"x","#, "JSON"),
    ];
    for (body, needle) in cases {
        let path = write_scenario(dir.path(), body);
        let out = obsphase(&["run", path_str(&path), "--out", path_str(dir.path())]);
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(2), "{body}: {stderr}");
        assert!(stderr.contains(needle), "{body}: {stderr}");
    }
    let out = obsphase(&["run", path_str(&dir.path().join("missing.json"))]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn non_cyclic_observable_exits_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(
        dir.path(),
        r#"{"schema":1,"name":"off_axis","system":"rotating-field","params":{"w0":1,"w1":0,"w":2,"phi":0.3,"steps":256}}"#,
    );
    let out = obsphase(&["run", path_str(&path), "--out", path_str(dir.path())]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(!dir.path().join("off_axis_report.json").exists());
}

#[test]
fn empty_sweep_prints_only_the_header() {
    let out = obsphase(&[
        "sweep",
        path_str(&scenario("constant_field.json")),
        "--param",
        "phi",
        "--range",
        "0:1:0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "phi,beta_1,beta_2,holonomy_residual,cyclicity_residual,status\n"
    );
}

#[test]
fn phi_sweep_follows_the_solid_angle() {
    let out = obsphase(&[
        "sweep",
        path_str(&scenario("constant_field.json")),
        "--param",
        "phi",
        "--range",
        &format!("0:{PI}:9"),
        "--steps",
        "1024",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows) = parse_csv(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(header[2], "beta_2");
    assert_eq!(rows.len(), 9);
    for row in rows {
        let phi: f64 = row[0].parse().unwrap();
        let beta_1: f64 = row[1].parse().unwrap();
        let beta_2: f64 = row[2].parse().unwrap();
        assert_eq!(row[5], "ok");
        assert!(
            phase_distance(beta_2, PI * (1.0 + phi.cos())) < 1e-6,
            "phi = {phi}"
        );
        assert!(
            phase_distance(beta_1, PI * (1.0 - phi.cos())) < 1e-6,
            "phi = {phi}"
        );
    }
}

#[test]
fn two_loop_sweep_over_frequency() {
    let dir = tempfile::tempdir().unwrap();
    let out = obsphase(&[
        "sweep",
        path_str(&scenario("two_loop.json")),
        "--param",
        "w",
        "--range",
        "1.5:4:6",
        "--steps",
        "2048",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.path().join("two_loop_sweep_w.csv")).unwrap();
    let (_, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert_eq!(row[5], "ok");
        // the reversed second loop retraces the first, so the loop closes on the identity
        for beta in &row[1..3] {
            assert!(phase_distance(beta.parse().unwrap(), 0.0) < 1e-6, "{row:?}");
        }
    }
}

#[test]
fn sweep_rejects_unknown_parameters() {
    for param in ["seed", "w0", "nonsense"] {
        let out = obsphase(&[
            "sweep",
            path_str(&scenario("constant_field.json")),
            "--param",
            param,
            "--range",
            "0:1:3",
        ]);
        assert_eq!(out.status.code(), Some(2), "{param}");
    }
    let out = obsphase(&[
        "sweep",
        path_str(&scenario("constant_field.json")),
        "--param",
        "phi",
        "--range",
        "0:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cnot_scenario_reports_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let out = obsphase(&[
        "run",
        path_str(&scenario("two_qubit_cnot.json")),
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.path().join("two_qubit_cnot_report.json")).unwrap();
    let report = Report::parse_and_validate(&text).unwrap();
    let cnot = report.cnot.unwrap();
    assert!(cnot.equivalent);
    assert!(phase_distance(cnot.target_phase, PI / 2.0) < 1e-9);
    assert!(report.residuals["gate_simulation"] < 1e-9);
    assert_eq!(report.dim, 4);
}

#[test]
fn every_bundled_scenario_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut names: Vec<_> =
        std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios"))
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
    names.sort();
    assert!(names.len() >= 6);
    for path in names {
        let out = obsphase(&[
            "run",
            path_str(&path),
            "--out",
            path_str(dir.path()),
            "--steps",
            "1024",
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
    }
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let text = std::fs::read_to_string(&path).unwrap();
            let report = Report::parse_and_validate(&text).unwrap();
            assert!(report.beta.iter().all(|b| (0.0..TAU).contains(b)));
        }
    }
}
