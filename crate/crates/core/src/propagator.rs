//! Propagators `U(t, 0)` of the time-dependent Schrödinger equation
//! `i dU/dt = h(t) U` sampled on a uniform grid.
//!
//! The integrator is the midpoint exponential (second-order Magnus):
//! `U_{k+1} = exp(-i dt h(t_k + dt/2)) U_k`. Each factor is unitary to
//! rounding, so no re-orthogonalization is ever applied.

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSchedule;
use crate::linalg::{expm_skew, pauli, ComplexMatrix};

pub const MIN_STEPS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropagatorMethod {
    MagnusMidpoint,
    ClosedFormConstant,
    ClosedFormRotating,
}

/// Cumulative unitaries `U(t_k, t_0)` on a strictly increasing grid.
#[derive(Clone, Debug)]
pub struct Propagator {
    dim: usize,
    grid: Vec<f64>,
    unitaries: Vec<ComplexMatrix>,
    method: PropagatorMethod,
}

/// Integrates `h` over `[0, t_final]` in `steps` midpoint-exponential steps.
pub fn solve(h: &HamiltonianSchedule, t_final: f64, steps: usize) -> Result<Propagator> {
    solve_interval(h, 0.0, t_final, steps)
}

/// Same as [`solve`] on `[t_start, t_end]`; the samples are `U(t_k, t_start)`.
pub fn solve_interval(
    h: &HamiltonianSchedule,
    t_start: f64,
    t_end: f64,
    steps: usize,
) -> Result<Propagator> {
    if steps < MIN_STEPS {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_STEPS} steps are required, got {steps}"
        )));
    }
    if !(t_end > t_start) || !t_end.is_finite() || !t_start.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "time interval [{t_start}, {t_end}] must be finite with positive length"
        )));
    }
    h.check_interval(t_start, t_end)?;

    let grid = uniform_grid(t_start, t_end, steps);
    let mut unitaries = Vec::with_capacity(steps + 1);
    let mut u = ComplexMatrix::identity(h.dim());
    unitaries.push(u.clone());
    for k in 0..steps {
        let dt = grid[k + 1] - grid[k];
        let mid = grid[k] + 0.5 * dt;
        let step = expm_skew(&h.eval(mid), dt)?;
        u = &step * &u;
        unitaries.push(u.clone());
    }
    Ok(Propagator {
        dim: h.dim(),
        grid,
        unitaries,
        method: PropagatorMethod::MagnusMidpoint,
    })
}

fn uniform_grid(t_start: f64, t_end: f64, steps: usize) -> Vec<f64> {
    let span = t_end - t_start;
    let mut grid: Vec<f64> = (0..=steps)
        .map(|k| t_start + span * (k as f64) / (steps as f64))
        .collect();
    grid[steps] = t_end;
    grid
}

/// `U(t, 0) = exp(-i w t sz / 2) exp(-i t H)` with `H = -(w0 sx + (w1 + w) sz) / 2`,
/// the exact propagator of the rotating-field Hamiltonian.
pub fn closed_form_rotating(w0: f64, w1: f64, w: f64, t: f64) -> ComplexMatrix {
    let frame = expm_skew(&pauli::z().scale_real(w / 2.0), t).expect("Pauli z is Hermitian");
    let generator = rotating_frame_generator(w0, w1, w);
    let body = expm_skew(&generator, t).expect("rotating-frame generator is Hermitian");
    &frame * &body
}

/// The time-independent rotating-frame Hamiltonian `H = -(w0 sx + (w1 + w) sz) / 2`.
pub fn rotating_frame_generator(w0: f64, w1: f64, w: f64) -> ComplexMatrix {
    (&pauli::x().scale_real(w0) + &pauli::z().scale_real(w1 + w)).scale_real(-0.5)
}

/// `U(t, 0) = exp(i mu_b t sz / 2)` for `h = -mu_b sz / 2`.
pub fn closed_form_constant_z(mu_b: f64, t: f64) -> ComplexMatrix {
    expm_skew(&pauli::z().scale_real(-mu_b / 2.0), t).expect("Pauli z is Hermitian")
}

impl Propagator {
    /// Wraps externally computed samples. The grid must be strictly increasing and
    /// start with the identity.
    pub fn from_samples(
        grid: Vec<f64>,
        unitaries: Vec<ComplexMatrix>,
        method: PropagatorMethod,
    ) -> Result<Self> {
        if grid.len() < 2 || grid.len() != unitaries.len() {
            return Err(Error::InvalidArgument(
                "grid and unitaries must have equal length of at least two".into(),
            ));
        }
        if !grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidArgument(
                "grid must be strictly increasing".into(),
            ));
        }
        let dim = unitaries[0].dim();
        for u in &unitaries {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            let deviation = u.unitarity_defect();
            if deviation > 1e-9 {
                return Err(Error::NotUnitary { deviation });
            }
        }
        Ok(Self {
            dim,
            grid,
            unitaries,
            method,
        })
    }

    /// Closed-form samples of the constant-field propagator on `[0, t_final]`.
    pub fn constant_z_exact(mu_b: f64, t_final: f64, steps: usize) -> Result<Self> {
        if mu_b == 0.0 {
            return Err(Error::ZeroField);
        }
        let grid = uniform_grid(0.0, t_final, steps.max(1));
        let unitaries = grid
            .iter()
            .map(|&t| closed_form_constant_z(mu_b, t))
            .collect();
        Self::from_samples(grid, unitaries, PropagatorMethod::ClosedFormConstant)
    }

    /// Closed-form samples of the rotating-field propagator on `[0, t_final]`.
    pub fn rotating_exact(w0: f64, w1: f64, w: f64, t_final: f64, steps: usize) -> Result<Self> {
        if w == 0.0 {
            return Err(Error::ZeroFrequency);
        }
        let grid = uniform_grid(0.0, t_final, steps.max(1));
        let unitaries = grid
            .iter()
            .map(|&t| closed_form_rotating(w0, w1, w, t))
            .collect();
        Self::from_samples(grid, unitaries, PropagatorMethod::ClosedFormRotating)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    pub fn method(&self) -> PropagatorMethod {
        self.method
    }

    pub fn steps(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn start_time(&self) -> f64 {
        self.grid[0]
    }

    pub fn end_time(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    pub fn duration(&self) -> f64 {
        self.end_time() - self.start_time()
    }

    pub fn at(&self, k: usize) -> Result<&ComplexMatrix> {
        self.unitaries.get(k).ok_or(Error::IndexOutOfRange {
            index: k,
            last: self.steps(),
        })
    }

    /// `U(t_N, t_0)`
    pub fn final_unitary(&self) -> &ComplexMatrix {
        &self.unitaries[self.unitaries.len() - 1]
    }

    /// `U(t_0, t_k) = U(t_k, t_0)^dagger`
    pub fn inverse_at(&self, k: usize) -> Result<ComplexMatrix> {
        Ok(self.at(k)?.adjoint())
    }

    /// Heisenberg picture `X(t_k) = U(0, t_k) X0 U(t_k, 0)`.
    pub fn heisenberg_evolve(&self, x0: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
        if x0.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x0.dim(),
            });
        }
        let deviation = x0.hermiticity_defect();
        if deviation > 1e-10 * x0.frobenius_norm().max(1.0) {
            return Err(Error::NotHermitian { deviation });
        }
        let u = self.at(k)?;
        Ok(&(&u.adjoint() * x0) * u)
    }

    /// `max_k ||U_k^dagger U_k - I||_F`
    pub fn unitarity_drift(&self) -> f64 {
        self.unitaries
            .iter()
            .map(|u| u.unitarity_defect())
            .fold(0.0, f64::max)
    }
}
