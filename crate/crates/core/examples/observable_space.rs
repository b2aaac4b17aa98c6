//! Points of the space of orthonormal decompositions, the distance between
//! them, and the gauge group acting on a fiber.
//!
//! cargo run --example observable_space

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use obsphase::gates::tilted_observable;
use obsphase::linalg::ComplexMatrix;
use obsphase::obspace::{
    bloch_chart, distance_dw, fiber_contains, GaugeElement, OrthDecomposition,
};

fn main() -> obsphase::Result<()> {
    let z = OrthDecomposition::standard(2);
    for phi in [0.0_f64, 0.5, 1.0, std::f64::consts::FRAC_PI_2, 3.0] {
        let o = OrthDecomposition::from_observable(&tilted_observable(phi))?;
        println!(
            "phi {phi:.4}: Bloch {:?}, distance to z-basis {:.6}",
            bloch_chart(&o)?.map(|x| (x * 1e6).round() / 1e6),
            distance_dw(&z, &o)?
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let o0 = OrthDecomposition::standard(3);
    let u = ComplexMatrix::random_unitary(3, &mut rng);
    let o = o0.evolved(&u);
    let g = GaugeElement::random(3, &mut rng);
    let v = &u * &g.as_unitary(&o0);
    println!("U in fiber: {}", fiber_contains(&u, &o, &o0, 1e-9)?);
    println!("U g in fiber: {}", fiber_contains(&v, &o, &o0, 1e-9)?);
    let back = GaugeElement::from_unitary(&(&u.adjoint() * &v), &o0, 1e-9).expect("gauge element");
    println!("recovered perm {:?} (drawn {:?})", back.perm(), g.perm());
    Ok(())
}
