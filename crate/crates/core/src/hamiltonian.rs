//! Time-dependent Hamiltonians as closed, evaluatable schedules.
//!
//! Angular frequencies enter only through the products `w_i = mu * B_i`.

use crate::error::{Error, Result};
use crate::linalg::{pauli, ComplexMatrix};

const HERMITIAN_TOL: f64 = 1e-10;

/// How a schedule produces `h(t)`.
#[derive(Clone, Debug)]
pub enum ScheduleKind {
    /// Time-independent `h`.
    Constant(ComplexMatrix),
    /// `-(w0 sx cos wt + w0 sy sin wt + w1 sz) / 2`.
    RotatingField { w0: f64, w1: f64, w: f64 },
    /// `-inner(period - t)`.
    Reversed {
        inner: Box<HamiltonianSchedule>,
        period: f64,
    },
    /// `inner(t)` on `[0, period)`, then `-inner(2 period - t)` on `[period, 2 period]`.
    TwoLoop {
        inner: Box<HamiltonianSchedule>,
        period: f64,
    },
    /// `diag(h0(t), h1(t))`.
    BlockDiag(Box<HamiltonianSchedule>, Box<HamiltonianSchedule>),
    /// Entrywise linear interpolation between Hermitian samples.
    Tabulated {
        times: Vec<f64>,
        samples: Vec<ComplexMatrix>,
    },
    /// `inner(t + offset)`.
    Shifted {
        inner: Box<HamiltonianSchedule>,
        offset: f64,
    },
    /// `s'(t) inner(s(t))` with the monotone warp `s(t) = t + a t (T - t) / T`.
    Warped {
        inner: Box<HamiltonianSchedule>,
        strength: f64,
        period: f64,
    },
}

/// A map `t -> h(t)` of Hermitian matrices on a closed time domain.
#[derive(Clone, Debug)]
pub struct HamiltonianSchedule {
    dim: usize,
    kind: ScheduleKind,
    domain: (f64, f64),
}

impl HamiltonianSchedule {
    pub fn constant(h: ComplexMatrix) -> Result<Self> {
        let deviation = h.hermiticity_defect();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            dim: h.dim(),
            kind: ScheduleKind::Constant(h),
            domain: (f64::NEG_INFINITY, f64::INFINITY),
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(ComplexMatrix::zeros(dim)).expect("zero is Hermitian")
    }

    /// Homogeneous field along z: `h = -mu_b sz / 2`.
    pub fn make_constant_z(mu_b: f64) -> Result<Self> {
        if mu_b == 0.0 || !mu_b.is_finite() {
            return Err(Error::ZeroField);
        }
        Self::constant(pauli::z().scale_real(-mu_b / 2.0))
    }

    /// Field of magnitude `w0` rotating in the xy-plane at angular frequency `w`,
    /// plus a static z component `w1`.
    pub fn make_rotating(w0: f64, w1: f64, w: f64) -> Result<Self> {
        if w == 0.0 || !w.is_finite() {
            return Err(Error::ZeroFrequency);
        }
        Ok(Self {
            dim: 2,
            kind: ScheduleKind::RotatingField { w0, w1, w },
            domain: (f64::NEG_INFINITY, f64::INFINITY),
        })
    }

    pub fn reversed(inner: HamiltonianSchedule, period: f64) -> Result<Self> {
        check_period(period)?;
        let (a, b) = inner.domain;
        Ok(Self {
            dim: inner.dim,
            domain: (period - b, period - a),
            kind: ScheduleKind::Reversed {
                inner: Box::new(inner),
                period,
            },
        })
    }

    /// Runs `inner` over `[0, period)` and its time- and field-reversed copy
    /// over `[period, 2 period]`.
    pub fn two_loop(inner: HamiltonianSchedule, period: f64) -> Result<Self> {
        check_period(period)?;
        inner.check_interval(0.0, period)?;
        Ok(Self {
            dim: inner.dim,
            domain: (0.0, 2.0 * period),
            kind: ScheduleKind::TwoLoop {
                inner: Box::new(inner),
                period,
            },
        })
    }

    /// Control-qubit block structure `diag(h0(t), h1(t))` in the basis
    /// `|00>, |01>, |10>, |11>`.
    pub fn make_block_two_qubit(h0: HamiltonianSchedule, h1: HamiltonianSchedule) -> Result<Self> {
        for h in [&h0, &h1] {
            if h.dim != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: h.dim,
                });
            }
        }
        let domain = (h0.domain.0.max(h1.domain.0), h0.domain.1.min(h1.domain.1));
        Ok(Self {
            dim: 4,
            domain,
            kind: ScheduleKind::BlockDiag(Box::new(h0), Box::new(h1)),
        })
    }

    pub fn tabulated(times: Vec<f64>, samples: Vec<ComplexMatrix>) -> Result<Self> {
        if times.len() < 2 || times.len() != samples.len() {
            return Err(Error::InvalidArgument(format!(
                "tabulated schedule needs at least two samples with matching times ({} times, {} samples)",
                times.len(),
                samples.len()
            )));
        }
        if !times.windows(2).all(|w| w[1] > w[0]) || !times.iter().all(|t| t.is_finite()) {
            return Err(Error::InvalidArgument(
                "sample times must be finite and strictly increasing".into(),
            ));
        }
        let dim = samples[0].dim();
        for s in &samples {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            let deviation = s.hermiticity_defect();
            if deviation > HERMITIAN_TOL {
                return Err(Error::NotHermitian { deviation });
            }
        }
        let domain = (times[0], times[times.len() - 1]);
        Ok(Self {
            dim,
            domain,
            kind: ScheduleKind::Tabulated { times, samples },
        })
    }

    pub fn shifted(inner: HamiltonianSchedule, offset: f64) -> Self {
        let (a, b) = inner.domain;
        Self {
            dim: inner.dim,
            domain: (a - offset, b - offset),
            kind: ScheduleKind::Shifted {
                inner: Box::new(inner),
                offset,
            },
        }
    }

    /// Reparameterizes time on `[0, period]` with `s(t) = t + a t (period - t) / period`.
    /// Requires `|a| < 1` so that `s` is strictly increasing; the endpoints are fixed.
    pub fn warped(inner: HamiltonianSchedule, strength: f64, period: f64) -> Result<Self> {
        check_period(period)?;
        if !(strength.abs() < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "warp strength {strength} must satisfy |a| < 1"
            )));
        }
        inner.check_interval(0.0, period)?;
        Ok(Self {
            dim: inner.dim,
            domain: (0.0, period),
            kind: ScheduleKind::Warped {
                inner: Box::new(inner),
                strength,
                period,
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &ScheduleKind {
        &self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn check_interval(&self, start: f64, end: f64) -> Result<()> {
        let (a, b) = self.domain;
        let slack = 1e-12 * (1.0 + start.abs().max(end.abs()));
        if start < a - slack || end > b + slack {
            return Err(Error::ScheduleDomain {
                start,
                end,
                domain_start: a,
                domain_end: b,
            });
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> ComplexMatrix {
        match &self.kind {
            ScheduleKind::Constant(h) => h.clone(),
            ScheduleKind::RotatingField { w0, w1, w } => {
                let (s, c) = (w * t).sin_cos();
                let field = &(&pauli::x().scale_real(w0 * c) + &pauli::y().scale_real(w0 * s))
                    + &pauli::z().scale_real(*w1);
                field.scale_real(-0.5)
            }
            ScheduleKind::Reversed { inner, period } => -inner.eval(period - t),
            ScheduleKind::TwoLoop { inner, period } => {
                if t < *period {
                    inner.eval(t)
                } else {
                    -inner.eval(2.0 * period - t)
                }
            }
            ScheduleKind::BlockDiag(h0, h1) => ComplexMatrix::block_diag(&h0.eval(t), &h1.eval(t)),
            ScheduleKind::Tabulated { times, samples } => interpolate(times, samples, t),
            ScheduleKind::Shifted { inner, offset } => inner.eval(t + offset),
            ScheduleKind::Warped {
                inner,
                strength,
                period,
            } => {
                let s = warp(*strength, *period, t);
                let ds = 1.0 + strength * (period - 2.0 * t) / period;
                inner.eval(s).scale_real(ds)
            }
        }
    }

    /// Times strictly inside `(start, end)` where `h(t)` may fail to be smooth.
    pub fn breakpoints(&self, start: f64, end: f64) -> Vec<f64> {
        let mut raw = Vec::new();
        self.collect_breakpoints(&mut raw);
        let eps = 1e-12 * (1.0 + start.abs().max(end.abs()));
        raw.retain(|&t| t > start + eps && t < end - eps);
        raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
        raw.dedup_by(|a, b| (*a - *b).abs() <= eps);
        raw
    }

    fn collect_breakpoints(&self, out: &mut Vec<f64>) {
        match &self.kind {
            ScheduleKind::Constant(_) | ScheduleKind::RotatingField { .. } => {}
            ScheduleKind::Reversed { inner, period } => {
                let mut v = Vec::new();
                inner.collect_breakpoints(&mut v);
                out.extend(v.into_iter().map(|t| period - t));
            }
            ScheduleKind::TwoLoop { inner, period } => {
                let mut v = Vec::new();
                inner.collect_breakpoints(&mut v);
                v.retain(|&t| t > 0.0 && t < *period);
                out.push(*period);
                out.extend(v.iter().copied());
                out.extend(v.iter().map(|t| 2.0 * period - t));
            }
            ScheduleKind::BlockDiag(h0, h1) => {
                h0.collect_breakpoints(out);
                h1.collect_breakpoints(out);
            }
            ScheduleKind::Tabulated { times, .. } => out.extend(times.iter().copied()),
            ScheduleKind::Shifted { inner, offset } => {
                let mut v = Vec::new();
                inner.collect_breakpoints(&mut v);
                out.extend(v.into_iter().map(|t| t - offset));
            }
            ScheduleKind::Warped {
                inner,
                strength,
                period,
            } => {
                let mut v = Vec::new();
                inner.collect_breakpoints(&mut v);
                out.extend(
                    v.into_iter()
                        .filter(|&s| s > 0.0 && s < *period)
                        .map(|s| unwarp(*strength, *period, s)),
                );
            }
        }
    }
}

fn check_period(period: f64) -> Result<()> {
    if !(period > 0.0) || !period.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "period must be positive and finite, got {period}"
        )));
    }
    Ok(())
}

fn warp(a: f64, period: f64, t: f64) -> f64 {
    t + a * t * (period - t) / period
}

fn unwarp(a: f64, period: f64, s: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, period);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if warp(a, period, mid) < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn interpolate(times: &[f64], samples: &[ComplexMatrix], t: f64) -> ComplexMatrix {
    let last = times.len() - 1;
    if t <= times[0] {
        return samples[0].clone();
    }
    if t >= times[last] {
        return samples[last].clone();
    }
    let k = times.partition_point(|&x| x <= t) - 1;
    let u = (t - times[k]) / (times[k + 1] - times[k]);
    &samples[k].scale_real(1.0 - u) + &samples[k + 1].scale_real(u)
}
