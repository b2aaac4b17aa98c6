//! Spin in a constant field along z: phases of the tilted observable's levels
//! for a few tilt angles, next to the solid-angle values pi (1 -/+ cos phi).
//!
//! cargo run --example constant_field

use std::f64::consts::{PI, TAU};

use obsphase::gates::tilted_observable;
use obsphase::hamiltonian::HamiltonianSchedule;
use obsphase::phases::{geometric_phases, DEFAULT_CYCLIC_TOL};
use obsphase::propagator::solve;

fn main() -> obsphase::Result<()> {
    let h = HamiltonianSchedule::make_constant_z(1.0)?;
    let p = solve(&h, TAU, 4096)?;
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "phi", "theta_1", "gamma_1", "beta_1", "beta_2", "expected_2"
    );
    for k in 0..=6 {
        let phi = PI * k as f64 / 6.0;
        let r = geometric_phases(&p, &h, &tilted_observable(phi), DEFAULT_CYCLIC_TOL)?;
        let l = &r.levels;
        println!(
            "{phi:8.4} {:10.6} {:10.6} {:10.6} {:10.6} {:10.6}",
            l[0].theta,
            l[0].gamma,
            l[0].beta,
            l[1].beta,
            (PI * (1.0 + phi.cos())).rem_euclid(TAU),
        );
    }
    Ok(())
}
