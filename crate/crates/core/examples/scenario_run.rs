//! Loads a scenario file, runs it without writing anything, and prints the report.
//!
//! cargo run --example scenario_run -- crates/core/scenarios/rotating_field_detuned.json

use obsphase::scenario::{analyze, RunOptions, Scenario};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/rotating_field.json").to_owned()
    });
    let result = Scenario::load(&path).and_then(|s| analyze(&s, &RunOptions::default()));
    match result {
        Ok(a) => print!("{}", a.report.to_json()),
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
