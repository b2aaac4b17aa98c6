//! Rotating field: theta, gamma and beta for the cyclic levels, with the
//! holonomy of the horizontal lift read off independently.
//!
//! cargo run --example rotating_field -- 1 3 2

use std::f64::consts::{PI, TAU};

use obsphase::gates::{cyclic_angle, tilted_observable};
use obsphase::hamiltonian::HamiltonianSchedule;
use obsphase::phases::{geometric_phases, DEFAULT_CYCLIC_TOL};
use obsphase::propagator::solve;

fn main() -> obsphase::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (w0, w1, w) = match args[..] {
        [a, b, c] => (a, b, c),
        _ => (1.0, 0.0, 2.0),
    };
    let h = HamiltonianSchedule::make_rotating(w0, w1, w)?;
    let p = solve(&h, TAU / w.abs(), 8192)?;
    let phi = cyclic_angle(w0, w1, w);
    let report = geometric_phases(&p, &h, &tilted_observable(phi), DEFAULT_CYCLIC_TOL)?;

    let r = w0.hypot(w1 + w);
    let cos_plus = -(w1 + w) / r;
    println!("w0 = {w0}, w1 = {w1}, w = {w}, cyclic angle = {phi:.6}");
    for (n, sign) in [(0, 1.0), (1, -1.0)] {
        let l = &report.levels[n];
        let closed = (PI + sign * PI / w * (r + w1 * cos_plus)).rem_euclid(TAU);
        println!(
            "level {n}: theta {:.9}  gamma {:+.9}  beta {:.9}  holonomy {:.9}  closed form {closed:.9}",
            l.theta, l.gamma, l.beta, l.holonomy_beta
        );
    }
    println!("holonomy residual {:.2e}", report.holonomy_residual);
    Ok(())
}
