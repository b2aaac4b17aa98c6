use thiserror::Error;

/// Failures raised by the numerical pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("spectrum is degenerate (minimum eigen-gap {min_gap:.3e})")]
    DegenerateSpectrum { min_gap: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field strength must be nonzero")]
    ZeroField,

    #[error("angular frequency must be nonzero")]
    ZeroFrequency,

    #[error(
        "interval [{start}, {end}] is outside the schedule domain [{domain_start}, {domain_end}]"
    )]
    ScheduleDomain {
        start: f64,
        end: f64,
        domain_start: f64,
        domain_end: f64,
    },

    #[error("grid index {index} out of range (last index is {last})")]
    IndexOutOfRange { index: usize, last: usize },

    #[error("base curve is not closed (overlap deficit {deficit:.3e})")]
    NotClosed { deficit: f64 },

    #[error(
        "holonomy element is not diagonal in the reference frame (overlap deficit {deficit:.3e})"
    )]
    NotDiagonal { deficit: f64 },

    #[error("evolution is not cyclic (overlap deficit {deficit:.3e})")]
    NotCyclic {
        deficit: f64,
        permutation: Option<Vec<usize>>,
    },

    #[error("geometric phase cross-check failed (residual {residual:.3e})")]
    CrossCheckFailed { residual: f64 },

    #[error("dynamical phases do not cancel (residual {residual:.3e})")]
    DynamicalResidual { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
