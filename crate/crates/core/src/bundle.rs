//! Lifts of observable-space curves into the unitary group, the canonical
//! connection of the reference frame, horizontal transport and holonomy.

use crate::error::{Error, Result};
use crate::linalg::{unitary_log, wrap_phase, ComplexMatrix, Ket};
use crate::obspace::{fiber_contains, is_permutation, match_rays, GaugeElement, OrthDecomposition};
use crate::propagator::Propagator;

const FIBER_TOL: f64 = 1e-8;

/// A sampled curve `t_k -> U(t_k)` in the fibers over `base_curve[k]`.
#[derive(Clone, Debug)]
pub struct LiftCurve {
    grid: Vec<f64>,
    unitaries: Vec<ComplexMatrix>,
    reference: OrthDecomposition,
    base_curve: Vec<OrthDecomposition>,
}

impl LiftCurve {
    /// Validates that every `U(t_k)` maps the reference frame onto `base_curve[k]`.
    pub fn new(
        grid: Vec<f64>,
        unitaries: Vec<ComplexMatrix>,
        reference: OrthDecomposition,
        base_curve: Vec<OrthDecomposition>,
    ) -> Result<Self> {
        if grid.len() != unitaries.len() || grid.len() != base_curve.len() || grid.len() < 2 {
            return Err(Error::InvalidArgument(
                "grid, unitaries and base curve must have equal length of at least two".into(),
            ));
        }
        for (u, o) in unitaries.iter().zip(&base_curve) {
            if !fiber_contains(u, o, &reference, FIBER_TOL)? {
                return Err(Error::InvalidArgument(
                    "lift leaves the fiber over its base curve".into(),
                ));
            }
        }
        Ok(Self {
            grid,
            unitaries,
            reference,
            base_curve,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    pub fn reference(&self) -> &OrthDecomposition {
        &self.reference
    }

    pub fn base_curve(&self) -> &[OrthDecomposition] {
        &self.base_curve
    }

    pub fn dim(&self) -> usize {
        self.reference.dim()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// The same base curve lifted through `U(t) g` instead of `U(t)`.
    pub fn with_start_gauge(&self, g: &GaugeElement) -> LiftCurve {
        let gu = g.as_unitary(&self.reference);
        LiftCurve {
            grid: self.grid.clone(),
            unitaries: self.unitaries.iter().map(|u| u * &gu).collect(),
            reference: self.reference.clone(),
            base_curve: self.base_curve.clone(),
        }
    }

    /// `arg <U(0) e_n | U(t_k) e_n>` for every sample and level.
    pub fn running_phases(&self) -> Vec<Vec<f64>> {
        let start: Vec<Ket> = self
            .reference
            .frame()
            .iter()
            .map(|e| e.evolve(&self.unitaries[0]))
            .collect();
        self.unitaries
            .iter()
            .map(|u| {
                self.reference
                    .frame()
                    .iter()
                    .zip(&start)
                    .map(|(e, s)| wrap_phase(s.inner(&e.evolve(u)).arg()))
                    .collect()
            })
            .collect()
    }
}

/// `sum_n <e_n|P^dagger Q|e_n> |e_n><e_n|`, the reference-diagonal part of `P^-1 Q`.
pub fn connection_eval(
    p: &ComplexMatrix,
    q: &ComplexMatrix,
    o0: &OrthDecomposition,
) -> Result<ComplexMatrix> {
    let deviation = p.unitarity_defect();
    if deviation > FIBER_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    for m in [q.dim(), o0.dim()] {
        if m != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                found: m,
            });
        }
    }
    let m = &p.adjoint() * q;
    let mut out = ComplexMatrix::zeros(p.dim());
    for e in o0.frame() {
        let c = m.sandwich(e.amps(), e.amps());
        out = &out + &e.projector().scale(c);
    }
    Ok(out)
}

/// Lift `U(0, t_k) W` of the Heisenberg curve of `initial`, where `W` carries the
/// computational basis onto the frame of `initial`.
pub fn lift_from_propagator(p: &Propagator, initial: &OrthDecomposition) -> Result<LiftCurve> {
    lift_from_propagator_with_reference(p, initial, &OrthDecomposition::standard(p.dim()))
}

/// As [`lift_from_propagator`] with an arbitrary reference decomposition `{e_n}`:
/// `W = sum_n |psi_n><e_n|`.
pub fn lift_from_propagator_with_reference(
    p: &Propagator,
    initial: &OrthDecomposition,
    reference: &OrthDecomposition,
) -> Result<LiftCurve> {
    for m in [initial.dim(), reference.dim()] {
        if m != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                found: m,
            });
        }
    }
    let w = &initial.frame_unitary() * &reference.frame_unitary().adjoint();
    let mut unitaries = Vec::with_capacity(p.grid().len());
    let mut base_curve = Vec::with_capacity(p.grid().len());
    for u in p.unitaries() {
        let back = u.adjoint();
        base_curve.push(initial.evolved(&back));
        unitaries.push(&back * &w);
    }
    LiftCurve::new(p.grid().to_vec(), unitaries, reference.clone(), base_curve)
}

/// Horizontal lift through `raw(0)`: `U~(t_k) = raw(t_k) G(t_k)` with `G` diagonal
/// in the reference frame.
///
/// Between samples the raw curve is taken as `exp(i s A_k) raw(t_k)` with
/// `exp(i A_k) = raw(t_{k+1}) raw(t_k)^-1`. Along that segment the connection is
/// constant, so the gauge phases advance exactly by `-<raw(t_k) e_n|A_k|raw(t_k) e_n>`.
/// For a midpoint-exponential propagator this is the midpoint rule for the
/// dynamical integral.
pub fn horizontal_lift(raw: &LiftCurve) -> LiftCurve {
    let d = raw.dim();
    let mut phases = vec![0.0; d];
    let mut unitaries = Vec::with_capacity(raw.len());
    let frame = raw.reference.frame();
    unitaries.push(raw.unitaries[0].clone());
    for w in raw.unitaries.windows(2) {
        let step = &w[1] * &w[0].adjoint();
        let generator = unitary_log(&step).expect("lift samples are unitary");
        for n in 0..d {
            let v = frame[n].evolve(&w[0]);
            phases[n] -= generator.sandwich(v.amps(), v.amps()).re;
        }
        let g = GaugeElement::phases_only(phases.clone()).as_unitary(&raw.reference);
        unitaries.push(&w[1] * &g);
    }
    LiftCurve {
        grid: raw.grid.clone(),
        unitaries,
        reference: raw.reference.clone(),
        base_curve: raw.base_curve.clone(),
    }
}

/// `max_k ||connection(U~_k, (U~_{k+1} - U~_k) / dt)||_F`; first order in the step.
pub fn horizontality_residual(curve: &LiftCurve) -> f64 {
    curve
        .unitaries
        .windows(2)
        .zip(curve.grid.windows(2))
        .map(|(u, t)| {
            let velocity = (&u[1] - &u[0]).scale_real(1.0 / (t[1] - t[0]));
            connection_eval(&u[0], &velocity, &curve.reference)
                .map(|c| c.frobenius_norm())
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

/// Gauge element `U~(0)^-1 U~(T) = sum_n e^{i beta_n} |e_{pi(n)}><e_n|`.
#[derive(Clone, Debug)]
pub struct Holonomy {
    pub phases: Vec<f64>,
    pub permutation: Vec<usize>,
    pub element: GaugeElement,
    pub closure_deficit: f64,
}

/// Reads the holonomy off a closed horizontal lift. `beta_n = arg <U~(0) e_{pi(n)} | U~(T) e_n>`
/// in `[0, 2 pi)`, where `pi` is the closure matching of the base curve.
pub fn holonomy(hor: &LiftCurve, tol: f64) -> Result<Holonomy> {
    let first = &hor.base_curve[0];
    let last = &hor.base_curve[hor.len() - 1];
    let (closure, closure_deficit) = match_rays(last.frame(), first.frame());
    if closure_deficit > tol || !is_permutation(&closure) {
        return Err(Error::NotClosed {
            deficit: closure_deficit,
        });
    }
    let g = &hor.unitaries[0].adjoint() * &hor.unitaries[hor.len() - 1];
    let images: Vec<Ket> = hor.reference.frame().iter().map(|e| e.evolve(&g)).collect();
    let (perm, deficit) = match_rays(&images, hor.reference.frame());
    if deficit > tol || !is_permutation(&perm) {
        return Err(Error::NotDiagonal { deficit });
    }
    let phases: Vec<f64> = images
        .iter()
        .zip(&perm)
        .map(|(img, &m)| wrap_phase(hor.reference.vector(m).inner(img).arg()))
        .collect();
    let element = GaugeElement::new(perm.clone(), phases.clone())?;
    Ok(Holonomy {
        phases,
        permutation: perm,
        element,
        closure_deficit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::HamiltonianSchedule;
    use crate::linalg::{pauli, C64};
    use crate::propagator::solve;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, TAU};

    fn tilted(phi: f64) -> ComplexMatrix {
        &pauli::x().scale_real(phi.sin()) + &pauli::z().scale_real(phi.cos())
    }

    #[test]
    fn connection_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let o0 =
            OrthDecomposition::from_unitary_columns(&ComplexMatrix::random_unitary(3, &mut rng))
                .unwrap();
        let p = ComplexMatrix::random_unitary(3, &mut rng);
        let dvals = [C64::new(0.3, -1.0), C64::new(0.0, 2.0), C64::new(-0.7, 0.1)];
        let mut dm = ComplexMatrix::zeros(3);
        for (e, v) in o0.frame().iter().zip(dvals) {
            dm = &dm + &e.projector().scale(v);
        }
        let q = &p * &dm;
        assert!(connection_eval(&p, &q, &o0).unwrap().max_abs_diff(&dm) < 1e-12);

        let z = OrthDecomposition::standard(2);
        let zero = connection_eval(&ComplexMatrix::identity(2), &pauli::x(), &z).unwrap();
        assert!(zero.frobenius_norm() < 1e-15);

        // gauge covariance for a diagonal phase
        let g = GaugeElement::phases_only(vec![0.4, 2.2, -1.0]).as_unitary(&o0);
        let q = ComplexMatrix::random_hermitian(3, &mut rng);
        let lhs = connection_eval(&(&p * &g), &(&q * &g), &o0).unwrap();
        let rhs = &(&g.adjoint() * &connection_eval(&p, &q, &o0).unwrap()) * &g;
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);

        let bad = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            connection_eval(&bad, &pauli::x(), &z),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn constant_field_base_curve() {
        let (phi, mu_b) = (0.9_f64, 1.0);
        let h = HamiltonianSchedule::make_constant_z(mu_b).unwrap();
        let p = solve(&h, TAU, 512).unwrap();
        let initial = OrthDecomposition::from_observable(&tilted(phi)).unwrap();
        let lift = lift_from_propagator(&p, &initial).unwrap();
        assert!(lift.base_curve()[0].approx_eq(&initial, 1e-14));
        for k in [0, 100, 333, 512] {
            let t = p.grid()[k];
            // projector onto the evolved upper eigenvector
            let expected = ComplexMatrix::from_rows(&[
                vec![
                    C64::new((1.0 + phi.cos()) / 2.0, 0.0),
                    C64::from_polar(phi.sin() / 2.0, -mu_b * t),
                ],
                vec![
                    C64::from_polar(phi.sin() / 2.0, mu_b * t),
                    C64::new((1.0 - phi.cos()) / 2.0, 0.0),
                ],
            ])
            .unwrap();
            let projs = lift.base_curve()[k].projectors();
            let best = projs
                .iter()
                .map(|q| q.max_abs_diff(&expected))
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "k = {k}: {best}");
        }
    }

    #[test]
    fn zero_hamiltonian_gives_constant_trivial_lift() {
        let h = HamiltonianSchedule::zero(3);
        let p = solve(&h, 1.0, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x0 = ComplexMatrix::random_hermitian(3, &mut rng);
        let initial = OrthDecomposition::from_observable(&x0).unwrap();
        let lift = lift_from_propagator(&p, &initial).unwrap();
        let hor = horizontal_lift(&lift);
        for (a, b) in lift.unitaries().iter().zip(hor.unitaries()) {
            assert!(a.max_abs_diff(&lift.unitaries()[0]) < 1e-15);
            assert!(a.max_abs_diff(b) < 1e-15);
        }
        let hol = holonomy(&hor, 1e-9).unwrap();
        assert!(hol.phases.iter().all(|&b| b.min(TAU - b) < 1e-14));
    }

    #[test]
    fn constant_field_lift_and_holonomy() {
        let mu_b = 1.0;
        let h = HamiltonianSchedule::make_constant_z(mu_b).unwrap();
        let p = solve(&h, TAU, 2048).unwrap();
        for phi in [0.0, PI / 6.0, PI / 3.0, 1.2] {
            let initial = OrthDecomposition::from_observable(&tilted(phi)).unwrap();
            let raw = lift_from_propagator(&p, &initial).unwrap();
            let hor = horizontal_lift(&raw);
            // levels ordered by eigenvalue: -1 first, +1 second
            let cos = [-phi.cos(), phi.cos()];
            for k in [64, 1000, 2048] {
                let t = p.grid()[k];
                for n in 0..2 {
                    let e = Ket::basis(2, n);
                    let rel = e
                        .evolve(&raw.unitaries()[k])
                        .inner(&e.evolve(&hor.unitaries()[k]));
                    let expected = C64::from_polar(1.0, t * mu_b / 2.0 * cos[n]);
                    assert!((rel - expected).norm() < 1e-9, "phi {phi} k {k} n {n}");
                }
            }
            let hol = holonomy(&hor, 1e-8).unwrap();
            assert_eq!(hol.permutation, vec![0, 1]);
            for n in 0..2 {
                let expected = wrap_phase(PI * (1.0 + cos[n]));
                let err = crate::linalg::phase_distance(hol.phases[n], expected);
                assert!(err < 1e-6, "phi {phi} n {n}: {err}");
            }
            assert!(horizontality_residual(&hor) < 1e-2);
        }
    }

    #[test]
    fn horizontal_residual_shrinks_with_step() {
        let h = HamiltonianSchedule::make_rotating(1.0, 0.5, 2.0).unwrap();
        let initial = OrthDecomposition::from_observable(&tilted(0.7)).unwrap();
        let res = |n| {
            let p = solve(&h, PI, n).unwrap();
            horizontality_residual(&horizontal_lift(
                &lift_from_propagator(&p, &initial).unwrap(),
            ))
        };
        let (coarse, fine) = (res(256), res(512));
        assert!(fine < 0.6 * coarse, "{coarse} -> {fine}");
    }

    #[test]
    fn open_curve_is_rejected() {
        let h = HamiltonianSchedule::make_constant_z(1.0).unwrap();
        let p = solve(&h, 2.0, 64).unwrap();
        let initial = OrthDecomposition::from_observable(&tilted(1.0)).unwrap();
        let hor = horizontal_lift(&lift_from_propagator(&p, &initial).unwrap());
        assert!(matches!(holonomy(&hor, 1e-6), Err(Error::NotClosed { .. })));
    }
}
