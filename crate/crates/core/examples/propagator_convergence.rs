//! Error of the midpoint-exponential propagator against the exact rotating-field
//! solution, with the observed order and the unitarity drift per step count.
//!
//! cargo run --example propagator_convergence

use std::f64::consts::TAU;

use obsphase::hamiltonian::HamiltonianSchedule;
use obsphase::propagator::{closed_form_rotating, solve};

fn main() -> obsphase::Result<()> {
    let (w0, w1, w) = (1.0, 0.0, 2.0);
    let period = TAU / w;
    let h = HamiltonianSchedule::make_rotating(w0, w1, w)?;
    let exact = closed_form_rotating(w0, w1, w, period);
    let mut previous: Option<f64> = None;
    println!(
        "{:>6} {:>12} {:>7} {:>12}",
        "steps", "error", "order", "drift"
    );
    for steps in [16, 32, 64, 128, 256, 512, 1024, 4096] {
        let p = solve(&h, period, steps)?;
        let err = (p.final_unitary() - &exact).frobenius_norm();
        let order = previous
            .map(|e| format!("{:.3}", (e / err).log2()))
            .unwrap_or_default();
        println!(
            "{steps:6} {err:12.4e} {order:>7} {:12.2e}",
            p.unitarity_drift()
        );
        previous = (steps < 1024).then_some(err);
    }
    Ok(())
}
