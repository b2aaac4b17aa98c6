//! The holonomy phases do not depend on how the loop is timed, where the lift
//! starts in its fiber, or which decomposition serves as reference.
//!
//! cargo run --example holonomy_invariance

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use obsphase::bundle::{holonomy, horizontal_lift, lift_from_propagator_with_reference};
use obsphase::gates::{cyclic_angle, tilted_observable};
use obsphase::hamiltonian::HamiltonianSchedule;
use obsphase::linalg::ComplexMatrix;
use obsphase::obspace::{GaugeElement, OrthDecomposition};
use obsphase::phases::{geometric_phases_with_lift, multiset_phase_distance, DEFAULT_CYCLIC_TOL};
use obsphase::propagator::solve;

fn main() -> obsphase::Result<()> {
    let (w0, w1, w) = (1.0, 3.0, 2.0);
    let period = TAU / w;
    let h = HamiltonianSchedule::make_rotating(w0, w1, w)?;
    let p = solve(&h, period, 4096)?;
    let frame = OrthDecomposition::from_observable(&tilted_observable(cyclic_angle(w0, w1, w)))?;
    let reference = OrthDecomposition::standard(2);
    let (base, _) = geometric_phases_with_lift(&p, &h, &frame, &reference, DEFAULT_CYCLIC_TOL)?;
    let beta = base.beta();
    println!("beta = {beta:?}");

    for strength in [-0.5, 0.5] {
        let warped = HamiltonianSchedule::warped(h.clone(), strength, period)?;
        let pw = solve(&warped, period, 4096)?;
        let (r, _) =
            geometric_phases_with_lift(&pw, &warped, &frame, &reference, DEFAULT_CYCLIC_TOL)?;
        println!(
            "time warp {strength:+}: deviation {:.2e}",
            multiset_phase_distance(&beta, &r.beta())
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let raw = lift_from_propagator_with_reference(&p, &frame, &reference)?;
    for _ in 0..3 {
        let g = GaugeElement::random(2, &mut rng);
        let hol = holonomy(
            &horizontal_lift(&raw.with_start_gauge(&g)),
            DEFAULT_CYCLIC_TOL,
        )?;
        println!(
            "start gauge perm {:?}: deviation {:.2e}",
            g.perm(),
            multiset_phase_distance(&beta, &hol.phases)
        );
    }
    for _ in 0..3 {
        let other =
            OrthDecomposition::from_unitary_columns(&ComplexMatrix::random_unitary(2, &mut rng))?;
        let (r, _) = geometric_phases_with_lift(&p, &h, &frame, &other, DEFAULT_CYCLIC_TOL)?;
        println!(
            "random reference: deviation {:.2e}",
            multiset_phase_distance(&beta, &r.holonomy_beta())
        );
    }
    Ok(())
}
