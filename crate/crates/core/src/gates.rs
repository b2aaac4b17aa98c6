//! Single- and two-qubit geometric gates, the two-loop protocol that removes
//! dynamical phases, and gate identity checks.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSchedule;
use crate::linalg::{pauli, wrap_phase, ComplexMatrix, Ket, C64};
use crate::phases::{geometric_phases, PhaseReport, DEFAULT_CYCLIC_TOL};
use crate::propagator::{solve, Propagator};

/// Largest accepted `max_n |gamma_n|` after the two loops.
pub const DYNAMICAL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub phi: f64,
    pub beta: f64,
}

impl GateSpec {
    pub fn new(phi: f64, beta: f64) -> Self {
        Self { phi, beta }
    }
}

/// Gates applied to the target when the control is `|0>` and `|1>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitSpec {
    pub control0: GateSpec,
    pub control1: GateSpec,
}

/// `e^{i beta}|psi+><psi+| + e^{-i beta}|psi-><psi-|` with
/// `psi+ = (cos phi/2, sin phi/2)` and `psi- = (-sin phi/2, cos phi/2)`.
pub fn u_phi_beta(spec: GateSpec) -> ComplexMatrix {
    let (sb, cb) = spec.beta.sin_cos();
    let (sp, cp) = spec.phi.sin_cos();
    let off = C64::new(0.0, sp * sb);
    ComplexMatrix::from_rows(&[
        vec![C64::new(cb, sb * cp), off],
        vec![off, C64::new(cb, -sb * cp)],
    ])
    .expect("2x2")
}

/// `block-diag(U_{phi0,beta0}, U_{phi1,beta1})` in the basis `|00>, |01>, |10>, |11>`.
pub fn two_qubit_gate(spec: TwoQubitSpec) -> ComplexMatrix {
    ComplexMatrix::block_diag(&u_phi_beta(spec.control0), &u_phi_beta(spec.control1))
}

pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::block_diag(&ComplexMatrix::identity(2), &pauli::x())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnotEquivalence {
    pub equivalent: bool,
    /// `alpha` in `U = block-diag(I, e^{i alpha} sx)`, in `[0, 2 pi)`.
    pub target_phase: f64,
    /// Largest entrywise distance to that form.
    pub deviation: f64,
}

/// Whether `u = block-diag(I, e^{i alpha} sx)` within `1e-8` for some `alpha`.
pub fn cnot_equivalence(u: &ComplexMatrix) -> Result<CnotEquivalence> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: u.dim(),
        });
    }
    let deviation = u.unitarity_defect();
    if deviation > 1e-8 {
        return Err(Error::NotUnitary { deviation });
    }
    let alpha = u[(2, 3)].arg();
    let target = ComplexMatrix::block_diag(
        &ComplexMatrix::identity(2),
        &pauli::x().scale(C64::from_polar(1.0, alpha)),
    );
    let deviation = u.max_abs_diff(&target);
    Ok(CnotEquivalence {
        equivalent: deviation <= 1e-8,
        target_phase: wrap_phase(alpha),
        deviation,
    })
}

/// `||[U_a, U_b]||_F <= tol`.
pub fn commutes(a: GateSpec, b: GateSpec, tol: f64) -> bool {
    u_phi_beta(a).commutator(&u_phi_beta(b)).frobenius_norm() <= tol
}

/// `2 atan(w0 / (w1 + w + sqrt(w0^2 + (w1 + w)^2)))`, the polar angle of the
/// cyclic eigenframe of the rotating field.
pub fn cyclic_angle(w0: f64, w1: f64, w: f64) -> f64 {
    let r = w0.hypot(w1 + w);
    2.0 * w0.atan2(w1 + w + r)
}

/// `sin(phi) sx + cos(phi) sz`, whose `+1` eigenvector is `(cos phi/2, sin phi/2)`.
pub fn tilted_observable(phi: f64) -> ComplexMatrix {
    &pauli::x().scale_real(phi.sin()) + &pauli::z().scale_real(phi.cos())
}

/// Result of simulating the two-loop protocol.
#[derive(Clone, Debug)]
pub struct TwoLoopGate {
    /// Simulated `U(2T, 0)`.
    pub gate: ComplexMatrix,
    pub report: PhaseReport,
    /// `phi` from the cyclic angle and `beta = arg <psi+|U(2T,0)|psi+>`.
    pub spec: GateSpec,
    /// `max_n |gamma_n|` over both loops.
    pub dynamical_residual: f64,
    /// Frobenius distance between `gate` and `u_phi_beta(spec)`.
    pub reconstruction_residual: f64,
    /// Duration `T = 2 pi / |w|` of one loop.
    pub period: f64,
    pub propagator: Propagator,
}

/// Runs the rotating field for one period and then its time- and field-reversed
/// copy, `h(t + T) = -h(T - t)`, and reads the gate off `U(2T, 0)`.
pub fn two_loop_protocol(w0: f64, w1: f64, w: f64, steps: usize) -> Result<TwoLoopGate> {
    let inner = HamiltonianSchedule::make_rotating(w0, w1, w)?;
    let period = TAU / w.abs();
    let schedule = HamiltonianSchedule::two_loop(inner, period)?;
    let steps = steps + steps % 2;
    let propagator = solve(&schedule, 2.0 * period, steps)?;
    let phi = cyclic_angle(w0, w1, w);
    let report = geometric_phases(
        &propagator,
        &schedule,
        &tilted_observable(phi),
        DEFAULT_CYCLIC_TOL,
    )?;
    let dynamical_residual = report.gamma().iter().map(|g| g.abs()).fold(0.0, f64::max);
    if dynamical_residual > DYNAMICAL_TOL {
        return Err(Error::DynamicalResidual {
            residual: dynamical_residual,
        });
    }
    let gate = propagator.final_unitary().clone();
    let plus = Ket::from_real(&[(phi / 2.0).cos(), (phi / 2.0).sin()])?;
    let beta = gate.sandwich(plus.amps(), plus.amps()).arg();
    let spec = GateSpec::new(phi, wrap_phase(beta));
    let reconstruction_residual = (&gate - &u_phi_beta(spec)).frobenius_norm();
    Ok(TwoLoopGate {
        gate,
        report,
        spec,
        dynamical_residual,
        reconstruction_residual,
        period,
        propagator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;
    use crate::propagator::closed_form_rotating;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn gate_examples() {
        let u = u_phi_beta(GateSpec::new(0.0, FRAC_PI_2));
        let expected = ComplexMatrix::diag(&[I, -I]);
        assert!(u.max_abs_diff(&expected) < 1e-12);
        assert!(
            u_phi_beta(GateSpec::new(0.77, 0.0)).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15
        );
        let u = u_phi_beta(GateSpec::new(FRAC_PI_2, FRAC_PI_2));
        assert!(u.max_abs_diff(&pauli::x().scale(I)) < 1e-12);
    }

    #[test]
    fn gate_matches_spectral_form() {
        for phi in [0.0_f64, 0.4, 1.9, 3.0] {
            for beta in [-1.0, 0.3, 2.5] {
                let (c, s) = ((phi / 2.0).cos(), (phi / 2.0).sin());
                let plus = Ket::from_real(&[c, s]).unwrap();
                let minus = Ket::from_real(&[-s, c]).unwrap();
                let spectral = &plus.projector().scale(C64::from_polar(1.0, beta))
                    + &minus.projector().scale(C64::from_polar(1.0, -beta));
                assert!(u_phi_beta(GateSpec::new(phi, beta)).max_abs_diff(&spectral) < 1e-14);
            }
        }
    }

    #[test]
    fn two_qubit_examples() {
        let spec = TwoQubitSpec {
            control0: GateSpec::new(FRAC_PI_2, 0.0),
            control1: GateSpec::new(FRAC_PI_2, FRAC_PI_2),
        };
        let u = two_qubit_gate(spec);
        let expected = ComplexMatrix::block_diag(&ComplexMatrix::identity(2), &pauli::x().scale(I));
        assert!(u.max_abs_diff(&expected) < 1e-12);
        let eq = cnot_equivalence(&u).unwrap();
        assert!(eq.equivalent);
        assert!((eq.target_phase - FRAC_PI_2).abs() < 1e-9);

        let trivial = TwoQubitSpec {
            control0: GateSpec::new(0.3, 0.0),
            control1: GateSpec::new(1.3, 0.0),
        };
        assert!(two_qubit_gate(trivial).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);

        let p0 = ComplexMatrix::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
            .kron(&ComplexMatrix::identity(2));
        assert!(u.commutator(&p0).frobenius_norm() < 1e-15);
    }

    #[test]
    fn cnot_examples() {
        let eq = cnot_equivalence(&cnot()).unwrap();
        assert!(eq.equivalent && eq.target_phase.abs() < 1e-15);
        let not_cnot = ComplexMatrix::block_diag(&ComplexMatrix::identity(2), &pauli::z());
        assert!(!cnot_equivalence(&not_cnot).unwrap().equivalent);
        let bad = ComplexMatrix::identity(4).scale_real(2.0);
        assert!(matches!(
            cnot_equivalence(&bad),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn commutation_examples() {
        let a = GateSpec::new(0.0, FRAC_PI_2);
        let b = GateSpec::new(FRAC_PI_2, FRAC_PI_2);
        assert!(!commutes(a, b, 1e-9));
        assert!(commutes(a, a, 1e-12));
        let minus_one = GateSpec::new(0.9, PI);
        assert!(
            u_phi_beta(minus_one).max_abs_diff(&ComplexMatrix::identity(2).scale_real(-1.0))
                < 1e-15
        );
        assert!(commutes(a, minus_one, 1e-12));
    }

    #[test]
    fn cyclic_angle_limits() {
        assert_eq!(cyclic_angle(0.0, 1.0, 2.0), 0.0);
        // the +1 eigenvector of the tilted observable is an eigenvector of the
        // rotating-frame generator
        let (w0, w1, w) = (1.0, 3.0, 2.0);
        let phi = cyclic_angle(w0, w1, w);
        let v = Ket::from_real(&[(phi / 2.0).cos(), (phi / 2.0).sin()]).unwrap();
        let gen = crate::propagator::rotating_frame_generator(w0, w1, w);
        let hv = v.evolve(&gen);
        assert!((v.inner(&hv).norm() - vec_len(&hv)).abs() < 1e-12);
    }

    fn vec_len(k: &Ket) -> f64 {
        crate::linalg::vec_norm(k.amps())
    }

    #[test]
    fn two_loop_matches_time_reversal_oracle() {
        let (w0, w1, w) = (1.0, 0.5, 2.0);
        let out = two_loop_protocol(w0, w1, w, 2048).unwrap();
        let period = out.period;
        // on the second loop U(t, 0) = U(2T - t, 0)
        for k in [1024, 1500, 2048] {
            let t = out.propagator.grid()[k];
            let oracle = closed_form_rotating(w0, w1, w, 2.0 * period - t);
            assert!(
                out.propagator.at(k).unwrap().max_abs_diff(&oracle) < 1e-5,
                "k {k}"
            );
        }
        assert!(out.dynamical_residual < 1e-8);
        assert!(out.reconstruction_residual < 1e-6);
        assert!(out.gate.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-9);
    }

    #[test]
    fn quoted_second_loop_form_is_discontinuous() {
        // e^{i w (t - 2T) sz / 2} e^{i t H} at t = T differs from the first loop's U(T, 0)
        let (w0, w1, w) = (1.0, 0.5, 2.0);
        let period = TAU / w;
        let gen = crate::propagator::rotating_frame_generator(w0, w1, w);
        let quoted = &crate::linalg::expm_skew(&pauli::z(), -w * (period - 2.0 * period) / 2.0)
            .unwrap()
            * &crate::linalg::expm_skew(&gen, -period).unwrap();
        let first = closed_form_rotating(w0, w1, w, period);
        assert!(quoted.max_abs_diff(&first) > 0.1);
    }
}
