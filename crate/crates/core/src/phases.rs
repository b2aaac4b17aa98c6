//! Total, dynamical and geometric phases of a cyclic Heisenberg evolution,
//! with a cross-check against the holonomy of the horizontal lift.

use serde::Serialize;

use crate::bundle::{holonomy, horizontal_lift, lift_from_propagator_with_reference, LiftCurve};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSchedule;
use crate::linalg::{phase_distance, wrap_phase, ComplexMatrix, Ket};
use crate::obspace::{is_permutation, match_rays, OrthDecomposition};
use crate::propagator::Propagator;

/// Overlap-deficit tolerance for declaring an evolution cyclic.
pub const DEFAULT_CYCLIC_TOL: f64 = 1e-6;
/// Largest accepted disagreement between the two geometric-phase computations.
pub const CROSS_CHECK_TOL: f64 = 1e-5;

/// Outcome of testing `U(0, T) psi_n = e^{i theta_n} psi_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicCheck {
    pub is_cyclic: bool,
    /// `arg <psi_n|U(0,T)|psi_n>` in `[0, 2 pi)`.
    pub theta: Vec<f64>,
    /// Set when the eigenframe returns to itself only up to a nontrivial relabeling.
    pub permutation: Option<Vec<usize>>,
    /// `max_n (1 - |<psi_n|U(0,T)|psi_n>|)`.
    pub residual: f64,
}

pub fn detect_cyclic(p: &Propagator, x0: &ComplexMatrix, tol: f64) -> Result<CyclicCheck> {
    let frame = OrthDecomposition::from_observable(x0)?;
    detect_cyclic_in_frame(p, &frame, tol)
}

/// [`detect_cyclic`] for an explicit eigenframe.
pub fn detect_cyclic_in_frame(
    p: &Propagator,
    frame: &OrthDecomposition,
    tol: f64,
) -> Result<CyclicCheck> {
    if frame.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: frame.dim(),
        });
    }
    let v = p.final_unitary().adjoint();
    let images: Vec<Ket> = frame.frame().iter().map(|psi| psi.evolve(&v)).collect();
    let diagonal: Vec<_> = frame
        .frame()
        .iter()
        .zip(&images)
        .map(|(psi, img)| psi.inner(img))
        .collect();
    let residual = diagonal.iter().map(|z| 1.0 - z.norm()).fold(0.0, f64::max);
    let theta = diagonal.iter().map(|z| wrap_phase(z.arg())).collect();
    if residual <= tol {
        return Ok(CyclicCheck {
            is_cyclic: true,
            theta,
            permutation: None,
            residual,
        });
    }
    let (perm, deficit) = match_rays(&images, frame.frame());
    let permutation = (deficit <= tol && is_permutation(&perm)).then_some(perm);
    Ok(CyclicCheck {
        is_cyclic: false,
        theta,
        permutation,
        residual,
    })
}

/// Composite Simpson integral of `<psi|h(t)|psi>` over `[0, t_final]`.
pub fn dynamical_phase(
    h: &HamiltonianSchedule,
    psi: &Ket,
    t_final: f64,
    steps: usize,
) -> Result<f64> {
    dynamical_phase_on(h, psi, 0.0, t_final, steps)
}

/// Composite Simpson integral of `<psi|h(t)|psi>` over `[t_start, t_end]`.
///
/// The interval is split at the schedule's breakpoints and every piece gets an
/// even share of `steps`. Every piece is sampled strictly inside its own
/// interval, so the endpoints see one-sided limits. This matters when an
/// endpoint falls on a switch of a piecewise schedule.
pub fn dynamical_phase_on(
    h: &HamiltonianSchedule,
    psi: &Ket,
    t_start: f64,
    t_end: f64,
    steps: usize,
) -> Result<f64> {
    if steps == 0 || !steps.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "Simpson quadrature needs a positive even step count, got {steps}"
        )));
    }
    if psi.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: psi.dim(),
        });
    }
    h.check_interval(t_start, t_end)?;
    if t_end <= t_start {
        return Ok(0.0);
    }
    let mut nodes = vec![t_start];
    nodes.extend(h.breakpoints(t_start, t_end));
    nodes.push(t_end);
    let span = t_end - t_start;
    let expectation = |t: f64| h.eval(t).sandwich(psi.amps(), psi.amps()).re;

    let mut total = 0.0;
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        let share = ((steps as f64) * (b - a) / span / 2.0).round() as usize;
        let n = 2 * share.max(1);
        let dt = (b - a) / n as f64;
        let nudge = 1e-9 * dt;
        let mut sum = 0.0;
        for j in 0..=n {
            let t = match j {
                0 => a + nudge,
                j if j == n => b - nudge,
                _ => a + dt * j as f64,
            };
            let weight = if j == 0 || j == n {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            sum += weight * expectation(t);
        }
        total += sum * dt / 3.0;
    }
    Ok(total)
}

/// Phases of one eigenlevel of the initial observable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelPhases {
    /// Total phase in `[0, 2 pi)`.
    pub theta: f64,
    /// Dynamical phase `int <psi_n|h|psi_n> dt`, unreduced.
    pub gamma: f64,
    /// `theta - gamma` reduced to `[0, 2 pi)`.
    pub beta: f64,
    /// `theta - gamma` before reduction.
    pub beta_raw: f64,
    /// Phase of the holonomy element on this level, in `[0, 2 pi)`.
    pub holonomy_beta: f64,
}

/// Per-level phases, ordered by ascending eigenvalue of the initial observable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseReport {
    pub levels: Vec<LevelPhases>,
    pub cyclicity_residual: f64,
    pub closure_permutation: Vec<usize>,
    /// `max_n |beta_n - holonomy_beta_n|` on the circle.
    pub holonomy_residual: f64,
}

impl PhaseReport {
    pub fn theta(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.theta).collect()
    }

    pub fn gamma(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.gamma).collect()
    }

    pub fn beta(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.beta).collect()
    }

    pub fn beta_raw(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.beta_raw).collect()
    }

    pub fn holonomy_beta(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.holonomy_beta).collect()
    }
}

/// Geometric phases of the eigenlevels of `x0` over the propagator's interval.
pub fn geometric_phases(
    p: &Propagator,
    h: &HamiltonianSchedule,
    x0: &ComplexMatrix,
    tol: f64,
) -> Result<PhaseReport> {
    let frame = OrthDecomposition::from_observable(x0)?;
    let reference = OrthDecomposition::standard(p.dim());
    Ok(geometric_phases_with_lift(p, h, &frame, &reference, tol)?.0)
}

/// Full pipeline for an explicit eigenframe and reference decomposition.
/// Also returns the horizontal lift whose holonomy was compared.
pub fn geometric_phases_with_lift(
    p: &Propagator,
    h: &HamiltonianSchedule,
    frame: &OrthDecomposition,
    reference: &OrthDecomposition,
    tol: f64,
) -> Result<(PhaseReport, LiftCurve)> {
    let cyclic = detect_cyclic_in_frame(p, frame, tol)?;
    if !cyclic.is_cyclic {
        return Err(Error::NotCyclic {
            deficit: cyclic.residual,
            permutation: cyclic.permutation,
        });
    }
    let quadrature_steps = 2 * p.steps();
    let gammas = frame
        .frame()
        .iter()
        .map(|psi| dynamical_phase_on(h, psi, p.start_time(), p.end_time(), quadrature_steps))
        .collect::<Result<Vec<_>>>()?;

    let raw = lift_from_propagator_with_reference(p, frame, reference)?;
    let hor = horizontal_lift(&raw);
    let hol = holonomy(&hor, tol.max(DEFAULT_CYCLIC_TOL))?;

    let mut levels = Vec::with_capacity(frame.dim());
    let mut worst = 0.0_f64;
    for n in 0..frame.dim() {
        let theta = cyclic.theta[n];
        let gamma = gammas[n];
        let beta_raw = theta - gamma;
        let beta = wrap_phase(beta_raw);
        let holonomy_beta = hol.phases[n];
        worst = worst.max(phase_distance(beta, holonomy_beta));
        levels.push(LevelPhases {
            theta,
            gamma,
            beta,
            beta_raw,
            holonomy_beta,
        });
    }
    if worst > CROSS_CHECK_TOL {
        return Err(Error::CrossCheckFailed { residual: worst });
    }
    Ok((
        PhaseReport {
            levels,
            cyclicity_residual: cyclic.residual,
            closure_permutation: hol.permutation,
            holonomy_residual: worst,
        },
        hor,
    ))
}

/// Distance between two multisets of phases: the smallest, over pairings, of the
/// largest circular distance between paired entries. Exact for up to six
/// entries; larger sets are compared after sorting.
pub fn multiset_phase_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    if n <= 6 {
        let mut best = f64::INFINITY;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let worst = p
                .iter()
                .enumerate()
                .map(|(i, &j)| phase_distance(a[i], b[j]))
                .fold(0.0, f64::max);
            best = best.min(worst);
        });
        return best;
    }
    let sorted = |v: &[f64]| {
        let mut w: Vec<f64> = v.iter().map(|&x| wrap_phase(x)).collect();
        w.sort_by(|x, y| x.partial_cmp(y).unwrap());
        w
    };
    let (sa, sb) = (sorted(a), sorted(b));
    (0..n)
        .map(|shift| {
            (0..n)
                .map(|i| phase_distance(sa[i], sb[(i + shift) % n]))
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, C64};
    use crate::propagator::solve;
    use std::f64::consts::{PI, TAU};

    fn tilted(phi: f64) -> ComplexMatrix {
        &pauli::x().scale_real(phi.sin()) + &pauli::z().scale_real(phi.cos())
    }

    #[test]
    fn constant_field_cyclicity() {
        let h = HamiltonianSchedule::make_constant_z(1.0).unwrap();
        let p = solve(&h, TAU, 1024).unwrap();
        let c = detect_cyclic(&p, &tilted(0.8), DEFAULT_CYCLIC_TOL).unwrap();
        assert!(c.is_cyclic);
        for th in c.theta {
            assert!(phase_distance(th, PI) < 1e-9);
        }
        let p = solve(&h, 2.5, 1024).unwrap();
        let c = detect_cyclic(&p, &tilted(0.8), DEFAULT_CYCLIC_TOL).unwrap();
        assert!(!c.is_cyclic);
        assert!(c.permutation.is_none());
        assert!(matches!(
            detect_cyclic(&p, &ComplexMatrix::identity(2), 1e-6),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn swapped_levels_report_permutation() {
        // a pi rotation about x exchanges the two z eigenvectors
        let h = HamiltonianSchedule::constant(pauli::x()).unwrap();
        let p = solve(&h, PI / 2.0, 64).unwrap();
        let c = detect_cyclic(&p, &pauli::z(), 1e-9).unwrap();
        assert!(!c.is_cyclic);
        assert_eq!(c.permutation, Some(vec![1, 0]));
        let err = geometric_phases(&p, &h, &pauli::z(), 1e-9).unwrap_err();
        assert!(matches!(
            err,
            Error::NotCyclic {
                permutation: Some(_),
                ..
            }
        ));
    }

    #[test]
    fn dynamical_phase_examples() {
        let phi: f64 = 1.1;
        let h = HamiltonianSchedule::make_constant_z(1.0).unwrap();
        let psi = Ket::from_real(&[(phi / 2.0).cos(), (phi / 2.0).sin()]).unwrap();
        let g = dynamical_phase(&h, &psi, TAU, 64).unwrap();
        assert!((g + PI * phi.cos()).abs() < 1e-12);
        assert_eq!(
            dynamical_phase(&HamiltonianSchedule::zero(2), &psi, 1.0, 8).unwrap(),
            0.0
        );
        assert!(dynamical_phase(&h, &psi, TAU, 7).is_err());
        assert!(matches!(
            dynamical_phase(&h, &psi, -1.0, 8),
            Err(Error::ScheduleDomain { .. }) | Ok(_)
        ));
    }

    #[test]
    fn rotating_field_dynamical_closed_form() {
        let (w0, w1, w) = (1.3, 0.4, 2.0);
        let h = HamiltonianSchedule::make_rotating(w0, w1, w).unwrap();
        let psi = Ket::new(vec![C64::new(0.6, 0.1), C64::new(-0.2, 0.7)]).unwrap();
        let t = 1.7;
        let ex = pauli::x().sandwich(psi.amps(), psi.amps()).re;
        let ey = pauli::y().sandwich(psi.amps(), psi.amps()).re;
        let ez = pauli::z().sandwich(psi.amps(), psi.amps()).re;
        let closed = -(w0 / (2.0 * w) * ex * (w * t).sin()
            + w0 / (2.0 * w) * ey * (1.0 - (w * t).cos())
            + w1 * t / 2.0 * ez);
        let coarse = dynamical_phase(&h, &psi, t, 64).unwrap();
        let fine = dynamical_phase(&h, &psi, t, 128).unwrap();
        assert!((fine - closed).abs() < 1e-7, "{fine} vs {closed}");
        // Simpson: error falls by roughly 16 per halving
        assert!((fine - closed).abs() < (coarse - closed).abs() / 10.0);
    }

    #[test]
    fn constant_field_report() {
        let h = HamiltonianSchedule::make_constant_z(1.0).unwrap();
        let p = solve(&h, TAU, 2048).unwrap();
        for (phi, expected) in [(PI / 3.0, [PI / 2.0, 1.5 * PI]), (PI / 2.0, [PI, PI])] {
            let r = geometric_phases(&p, &h, &tilted(phi), DEFAULT_CYCLIC_TOL).unwrap();
            for n in 0..2 {
                assert!(phase_distance(r.levels[n].beta, expected[n]) < 1e-6);
                assert!(phase_distance(r.levels[n].theta, PI) < 1e-6);
            }
            assert!(phase_distance(r.beta()[0] + r.beta()[1], 0.0) < 1e-6);
            assert!(r.holonomy_residual < 1e-6);
            assert_eq!(r.closure_permutation, vec![0, 1]);
        }
    }

    #[test]
    fn multiset_distance() {
        assert!(multiset_phase_distance(&[0.1, 2.0], &[2.0, 0.1]) < 1e-15);
        assert!((multiset_phase_distance(&[0.1, 2.0], &[2.0, 0.3]) - 0.2).abs() < 1e-12);
        assert!(multiset_phase_distance(&[0.05], &[TAU - 0.05]) < 0.1 + 1e-12);
        let a: Vec<f64> = (0..8).map(|i| i as f64 * 0.7).collect();
        let mut b = a.clone();
        b.reverse();
        assert!(multiset_phase_distance(&a, &b) < 1e-12);
        assert_eq!(multiset_phase_distance(&[1.0], &[1.0, 2.0]), f64::INFINITY);
    }

    #[test]
    fn breakpoints_are_integrated_piecewise() {
        let inner = HamiltonianSchedule::make_rotating(1.0, 0.5, 2.0).unwrap();
        let two = HamiltonianSchedule::two_loop(inner.clone(), PI).unwrap();
        let psi = Ket::from_real(&[0.8, 0.6]).unwrap();
        let first = dynamical_phase(&inner, &psi, PI, 256).unwrap();
        let whole = dynamical_phase(&two, &psi, 2.0 * PI, 512).unwrap();
        assert!(first.abs() > 0.1);
        assert!(whole.abs() < 1e-8, "{whole}");
    }
}
