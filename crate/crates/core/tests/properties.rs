use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use obsphase::bundle::{horizontal_lift, horizontality_residual, lift_from_propagator};
use obsphase::gates::{commutes, cyclic_angle, tilted_observable, u_phi_beta, GateSpec};
use obsphase::hamiltonian::HamiltonianSchedule;
use obsphase::linalg::{
    expm_skew, hermitian_eig, phase_distance, unitary_eigenphases, ComplexMatrix, Ket, C64,
};
use obsphase::obspace::{distance_dw, fiber_contains, GaugeElement, OrthDecomposition};
use obsphase::phases::{
    dynamical_phase, geometric_phases, geometric_phases_with_lift, DEFAULT_CYCLIC_TOL,
};
use obsphase::propagator::solve;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_decomposition(dim: usize, r: &mut ChaCha8Rng) -> OrthDecomposition {
    OrthDecomposition::from_unitary_columns(&ComplexMatrix::random_unitary(dim, r)).unwrap()
}

fn det2(m: &ComplexMatrix) -> C64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>(), dim in 1usize..=6) {
        let h = ComplexMatrix::random_hermitian(dim, &mut rng(seed));
        let eig = hermitian_eig(&h, 1e-10).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&h) < 1e-10);
        prop_assert!(eig.vector_matrix().unitarity_defect() < 1e-12);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn exponential_is_unitary_and_additive(
        seed in any::<u64>(),
        dim in 1usize..=5,
        s in -3.0f64..3.0,
        t in -3.0f64..3.0,
    ) {
        let h = ComplexMatrix::random_hermitian(dim, &mut rng(seed));
        let a = expm_skew(&h, s).unwrap();
        let b = expm_skew(&h, t).unwrap();
        prop_assert!(a.unitarity_defect() < 1e-12);
        prop_assert!((&a * &b).max_abs_diff(&expm_skew(&h, s + t).unwrap()) < 1e-11);
        prop_assert!(expm_skew(&h, -s).unwrap().max_abs_diff(&a.adjoint()) < 1e-12);
    }

    #[test]
    fn gauge_product_matches_matrix_product(seed in any::<u64>(), dim in 1usize..=5) {
        let mut r = rng(seed);
        let reference = random_decomposition(dim, &mut r);
        let g = GaugeElement::random(dim, &mut r);
        let h = GaugeElement::random(dim, &mut r);
        let lhs = g.compose(&h).as_unitary(&reference);
        let rhs = &g.as_unitary(&reference) * &h.as_unitary(&reference);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let id = g.compose(&g.inverse()).as_unitary(&reference);
        prop_assert!(id.max_abs_diff(&ComplexMatrix::identity(dim)) < 1e-12);
    }

    #[test]
    fn fiber_is_a_gauge_torsor(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = rng(seed);
        let o0 = random_decomposition(dim, &mut r);
        let u = ComplexMatrix::random_unitary(dim, &mut r);
        let o = o0.evolved(&u);
        let g = GaugeElement::random(dim, &mut r);
        let v = &u * &g.as_unitary(&o0);
        prop_assert!(fiber_contains(&v, &o, &o0, 1e-9).unwrap());
        let back = GaugeElement::from_unitary(&(&u.adjoint() * &v), &o0, 1e-9).unwrap();
        prop_assert!(back.as_unitary(&o0).max_abs_diff(&g.as_unitary(&o0)) < 1e-10);
    }

    #[test]
    fn distance_is_symmetric_and_vanishes_on_equal_rays(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_decomposition(2, &mut r);
        let b = random_decomposition(2, &mut r);
        let ab = distance_dw(&a, &b).unwrap();
        prop_assert!((ab - distance_dw(&b, &a).unwrap()).abs() < 1e-9);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&ab));
        // re-phasing and reordering the frame does not move the point of W(H)
        let g = GaugeElement::random(2, &mut r);
        let same = a.evolved(&g.as_unitary(&a));
        prop_assert!(distance_dw(&a, &same).unwrap() < 1e-9);
    }

    #[test]
    fn distance_triangle_inequality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_decomposition(2, &mut r);
        let b = random_decomposition(2, &mut r);
        let c = random_decomposition(2, &mut r);
        let ac = distance_dw(&a, &c).unwrap();
        let via = distance_dw(&a, &b).unwrap() + distance_dw(&b, &c).unwrap();
        prop_assert!(ac <= via + 1e-9);
    }

    #[test]
    fn gate_is_special_unitary(phi in 0.0f64..PI, beta in -TAU..TAU) {
        let u = u_phi_beta(GateSpec::new(phi, beta));
        prop_assert!(u.unitarity_defect() < 1e-12);
        prop_assert!((det2(&u) - C64::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!((u.trace() - C64::new(2.0 * beta.cos(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn heisenberg_evolution_preserves_spectrum(seed in any::<u64>(), k in 0usize..=64) {
        let mut r = rng(seed);
        let h = HamiltonianSchedule::constant(ComplexMatrix::random_hermitian(3, &mut r)).unwrap();
        let p = solve(&h, 1.3, 64).unwrap();
        let x0 = ComplexMatrix::random_hermitian(3, &mut r);
        let xt = p.heisenberg_evolve(&x0, k).unwrap();
        let before = hermitian_eig(&x0, 1e-10).unwrap().values;
        let after = hermitian_eig(&xt, 1e-10).unwrap().values;
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn phases_ignore_eigenvector_phase_convention(
        w0 in 0.3f64..2.5,
        w1 in -1.5f64..1.5,
        w in 0.8f64..3.0,
        chi0 in -PI..PI,
        chi1 in -PI..PI,
    ) {
        let h = HamiltonianSchedule::make_rotating(w0, w1, w).unwrap();
        let p = solve(&h, TAU / w, 1024).unwrap();
        let x0 = tilted_observable(cyclic_angle(w0, w1, w));
        let frame = OrthDecomposition::from_observable(&x0).unwrap();
        let rephased = OrthDecomposition::from_frame(vec![
            frame.vector(0).with_phase(chi0),
            frame.vector(1).with_phase(chi1),
        ])
        .unwrap();
        let reference = OrthDecomposition::standard(2);
        let (a, _) = geometric_phases_with_lift(&p, &h, &frame, &reference, DEFAULT_CYCLIC_TOL).unwrap();
        let (b, _) = geometric_phases_with_lift(&p, &h, &rephased, &reference, DEFAULT_CYCLIC_TOL).unwrap();
        for n in 0..2 {
            prop_assert!(phase_distance(a.levels[n].beta, b.levels[n].beta) < 1e-9);
            prop_assert!(phase_distance(a.levels[n].holonomy_beta, b.levels[n].holonomy_beta) < 1e-9);
        }
    }

    #[test]
    fn traceless_two_level_phases_cancel(
        w0 in 0.3f64..2.5,
        w1 in -1.5f64..1.5,
        w in 0.8f64..3.0,
    ) {
        let h = HamiltonianSchedule::make_rotating(w0, w1, w).unwrap();
        let p = solve(&h, TAU / w, 1024).unwrap();
        let r = geometric_phases(&p, &h, &tilted_observable(cyclic_angle(w0, w1, w)), DEFAULT_CYCLIC_TOL).unwrap();
        let beta = r.beta();
        prop_assert!(phase_distance(beta[0] + beta[1], 0.0) < 1e-9);
        let det_phase: f64 = unitary_eigenphases(p.final_unitary()).unwrap().iter().sum();
        prop_assert!(phase_distance(det_phase, 0.0) < 1e-9);
    }
}

#[test]
fn commutation_grid() {
    // with both rotation angles generic, two gates commute exactly when they share
    // an eigenbasis, i.e. when their axis angles agree mod pi
    let n = 21;
    let (beta_a, beta_b) = (0.7, 1.3);
    for i in 0..n {
        for j in 0..n {
            let phi_a = PI * i as f64 / (n - 1) as f64;
            let phi_b = PI * j as f64 / (n - 1) as f64;
            let shared = i == j || (i == 0 && j == n - 1) || (i == n - 1 && j == 0);
            let c = commutes(
                GateSpec::new(phi_a, beta_a),
                GateSpec::new(phi_b, beta_b),
                1e-9,
            );
            assert_eq!(c, shared, "phi_a = {phi_a}, phi_b = {phi_b}");
        }
    }
    for phi_b in [0.0, 0.9, 2.2] {
        assert!(commutes(
            GateSpec::new(0.4, 0.0),
            GateSpec::new(phi_b, 1.1),
            1e-9
        ));
        assert!(commutes(
            GateSpec::new(0.4, PI),
            GateSpec::new(phi_b, 1.1),
            1e-9
        ));
    }
}

#[test]
fn simpson_quadrature_is_fourth_order() {
    let h = HamiltonianSchedule::make_rotating(1.3, 0.4, 2.0).unwrap();
    let psi = Ket::new(vec![C64::new(0.6, 0.1), C64::new(-0.2, 0.7)]).unwrap();
    let t = 1.7;
    let fine = dynamical_phase(&h, &psi, t, 4096).unwrap();
    let errors: Vec<f64> = [8, 16, 32]
        .iter()
        .map(|&n| (dynamical_phase(&h, &psi, t, n).unwrap() - fine).abs())
        .collect();
    for pair in errors.windows(2) {
        let order = (pair[0] / pair[1]).log2();
        assert!((order - 4.0).abs() < 0.3, "observed order {order}");
    }
}

#[test]
fn horizontality_residual_is_first_order() {
    let h = HamiltonianSchedule::make_rotating(1.0, 0.5, 2.0).unwrap();
    let frame = OrthDecomposition::from_observable(&tilted_observable(cyclic_angle(1.0, 0.5, 2.0)))
        .unwrap();
    let residual = |steps| {
        let p = solve(&h, PI, steps).unwrap();
        horizontality_residual(&horizontal_lift(&lift_from_propagator(&p, &frame).unwrap()))
    };
    let (coarse, fine) = (residual(256), residual(512));
    let ratio = coarse / fine;
    assert!((1.7..2.3).contains(&ratio), "{coarse} / {fine} = {ratio}");
}
