//! Two-loop protocol: the rotating field followed by its time- and
//! field-reversed copy. Prints the cancelled dynamical phases, the gate read
//! off U(2T, 0), and the single-qubit gate U(phi, beta) it is fitted to.
//!
//! cargo run --example two_loop_gate

use obsphase::gates::{two_loop_protocol, u_phi_beta};

fn main() -> obsphase::Result<()> {
    let g = two_loop_protocol(1.0, 0.5, 2.0, 8192)?;
    println!("loop period T = {:.6}", g.period);
    println!("gamma per level = {:?}", g.report.gamma());
    println!("fitted phi = {:.9}, beta = {:.9}", g.spec.phi, g.spec.beta);
    println!("U(2T, 0) =\n{:?}", g.gate);
    println!("U(phi, beta) =\n{:?}", u_phi_beta(g.spec));
    println!("reconstruction residual {:.2e}", g.reconstruction_residual);
    Ok(())
}
