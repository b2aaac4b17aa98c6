//! Controlled geometric gates: block-diag(U(phi0, beta0), U(phi1, beta1))
//! equals CNOT up to a phase on the target block for suitable angles.
//!
//! cargo run --example cnot

use std::f64::consts::FRAC_PI_2;

use obsphase::gates::{
    cnot_equivalence, commutes, two_qubit_gate, u_phi_beta, GateSpec, TwoQubitSpec,
};

fn main() -> obsphase::Result<()> {
    let spec = TwoQubitSpec {
        control0: GateSpec::new(FRAC_PI_2, 0.0),
        control1: GateSpec::new(FRAC_PI_2, FRAC_PI_2),
    };
    let u = two_qubit_gate(spec);
    println!("{u:?}");
    let eq = cnot_equivalence(&u)?;
    println!(
        "CNOT-equivalent: {}, target phase {:.9}, deviation {:.1e}",
        eq.equivalent, eq.target_phase, eq.deviation
    );

    let z_like = GateSpec::new(0.0, FRAC_PI_2);
    let x_like = GateSpec::new(FRAC_PI_2, FRAC_PI_2);
    println!("U(0, pi/2) = {:?}", u_phi_beta(z_like));
    println!("U(pi/2, pi/2) = {:?}", u_phi_beta(x_like));
    println!("they commute: {}", commutes(z_like, x_like, 1e-9));
    Ok(())
}
