//! Observable-geometric phases of cyclic Heisenberg evolutions.
//!
//! A Hamiltonian schedule `h(t)` is integrated into propagators `U(t, 0)`. An
//! initial non-degenerate observable `X0` whose Heisenberg evolution returns to
//! itself after time `T` has eigenvectors that pick up total phases `theta_n`;
//! removing the dynamical part `gamma_n = int <psi_n|h|psi_n> dt` leaves the
//! geometric phases `beta_n`. The same numbers appear as the holonomy of the
//! horizontal lift of the closed curve of orthonormal decompositions traced by
//! `X(t)`, and the crate computes both and compares them.
//!
//! Modules, bottom-up:
//!
//! * [`linalg`]: dense complex matrices, Hermitian eigensolver, exponentials.
//! * [`hamiltonian`]: time-dependent Hamiltonian schedules.
//! * [`propagator`]: midpoint-exponential integration of `i dU/dt = h U`.
//! * [`obspace`]: orthonormal decompositions, gauge elements, distances, Bloch chart.
//! * [`bundle`]: lifts, the canonical connection, horizontal transport, holonomy.
//! * [`phases`]: cyclicity, dynamical and geometric phases with a holonomy cross-check.
//! * [`gates`]: geometric single- and two-qubit gates and the two-loop protocol.
//! * [`scenario`]: JSON scenarios, reports, CSV curves and parameter sweeps.
//!
//! ```
//! use obsphase::gates::tilted_observable;
//! use obsphase::hamiltonian::HamiltonianSchedule;
//! use obsphase::phases::{geometric_phases, DEFAULT_CYCLIC_TOL};
//! use obsphase::propagator::solve;
//!
//! let h = HamiltonianSchedule::make_constant_z(1.0).unwrap();
//! let p = solve(&h, std::f64::consts::TAU, 1024).unwrap();
//! let phi = std::f64::consts::FRAC_PI_3;
//! let report = geometric_phases(&p, &h, &tilted_observable(phi), DEFAULT_CYCLIC_TOL).unwrap();
//! let beta = report.beta();
//! assert!((beta[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bundle;
pub mod error;
pub mod gates;
pub mod hamiltonian;
pub mod linalg;
pub mod obspace;
pub mod phases;
pub mod propagator;
pub mod scenario;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Ket, C64};
