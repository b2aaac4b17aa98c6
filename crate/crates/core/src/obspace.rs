//! Points of the observable space: complete orthonormal decompositions of the
//! Hilbert space, the gauge group of a reference decomposition, fiber
//! membership, the distance between decompositions, and the Bloch chart for
//! a qubit.
//!
//! A decomposition is identified by its unordered set of rank-1 projectors.
//! The stored frame has an order and per-vector phases, but neither is part of
//! its identity; comparisons go through greedy max-overlap matching.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, operator_norm, unitary_eigenphases, wrap_phase, ComplexMatrix, Ket, C64,
    DEFAULT_GAP_TOL,
};

const FRAME_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-8;

/// A complete orthonormal decomposition `{|n><n|}`.
#[derive(Clone, Debug)]
pub struct OrthDecomposition {
    frame: Vec<Ket>,
}

impl OrthDecomposition {
    /// Builds a decomposition from an orthonormal basis; vectors are phase-fixed.
    pub fn from_frame(frame: Vec<Ket>) -> Result<Self> {
        let dim = frame.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("empty frame".into()));
        }
        for k in &frame {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k.dim(),
                });
            }
        }
        for n in 0..dim {
            for m in n..dim {
                let target = if n == m { 1.0 } else { 0.0 };
                let overlap = frame[n].inner(&frame[m]);
                if (overlap - C64::new(target, 0.0)).norm() > FRAME_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "frame vectors {n} and {m} are not orthonormal (overlap {overlap})"
                    )));
                }
            }
        }
        Ok(Self {
            frame: frame.iter().map(Ket::phase_fixed).collect(),
        })
    }

    /// The computational basis.
    pub fn standard(dim: usize) -> Self {
        Self {
            frame: (0..dim).map(|n| Ket::basis(dim, n)).collect(),
        }
    }

    /// Frame `{U e_n}` built from the columns of a unitary.
    pub fn from_unitary_columns(u: &ComplexMatrix) -> Result<Self> {
        let deviation = u.unitarity_defect();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        let frame = (0..u.dim())
            .map(|j| Ket::new(u.column(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            frame: frame.iter().map(Ket::phase_fixed).collect(),
        })
    }

    /// Spectral decomposition of a non-degenerate observable, ordered by ascending eigenvalue.
    pub fn from_observable(x: &ComplexMatrix) -> Result<Self> {
        let tol = 1e-10 * x.frobenius_norm().max(1.0);
        let eig = hermitian_eig(x, tol)?;
        if eig.min_gap < DEFAULT_GAP_TOL {
            return Err(Error::DegenerateSpectrum {
                min_gap: eig.min_gap,
            });
        }
        Ok(Self { frame: eig.vectors })
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[Ket] {
        &self.frame
    }

    pub fn vector(&self, n: usize) -> &Ket {
        &self.frame[n]
    }

    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        self.frame.iter().map(Ket::projector).collect()
    }

    /// `sum_n |psi_n><e_n|`: maps the computational basis onto this frame.
    pub fn frame_unitary(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut u = ComplexMatrix::zeros(d);
        for (j, k) in self.frame.iter().enumerate() {
            for i in 0..d {
                u[(i, j)] = k.amps()[i];
            }
        }
        u
    }

    /// Frame `{U psi_n}`, same ordering.
    pub fn evolved(&self, u: &ComplexMatrix) -> Self {
        Self {
            frame: self
                .frame
                .iter()
                .map(|k| k.evolve(u).phase_fixed())
                .collect(),
        }
    }

    /// Greedy max-overlap matching: `perm[n]` is the index in `other` whose vector
    /// spans the same ray as `self.frame[n]`. Returns `None` unless every match has
    /// `|<other_m|self_n>| >= 1 - tol` and the assignment is injective.
    pub fn matching(&self, other: &OrthDecomposition, tol: f64) -> Option<Vec<usize>> {
        if self.dim() != other.dim() {
            return None;
        }
        let (perm, deficit) = match_rays(&self.frame, &other.frame);
        if deficit <= tol && is_permutation(&perm) {
            Some(perm)
        } else {
            None
        }
    }

    /// Projector-set equality within `tol` on the ray overlaps.
    pub fn approx_eq(&self, other: &OrthDecomposition, tol: f64) -> bool {
        self.matching(other, tol).is_some()
    }
}

/// For each vector in `vs`, the best-overlapping index in `targets` and the
/// worst overlap deficit `1 - |<t|v>|` over all of them.
pub(crate) fn match_rays(vs: &[Ket], targets: &[Ket]) -> (Vec<usize>, f64) {
    let mut perm = Vec::with_capacity(vs.len());
    let mut deficit = 0.0_f64;
    for v in vs {
        let (best, overlap) = targets
            .iter()
            .enumerate()
            .map(|(m, t)| (m, t.inner(v).norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        perm.push(best);
        deficit = deficit.max(1.0 - overlap);
    }
    (perm, deficit)
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Element `sum_n e^{i theta_n} |e_{sigma(n)}><e_n|` of the gauge group of a
/// reference decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeElement {
    perm: Vec<usize>,
    phases: Vec<f64>,
}

impl GaugeElement {
    pub fn new(perm: Vec<usize>, phases: Vec<f64>) -> Result<Self> {
        if perm.len() != phases.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.len(),
                found: phases.len(),
            });
        }
        if !is_permutation(&perm) {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation"
            )));
        }
        Ok(Self {
            perm,
            phases: phases.into_iter().map(wrap_phase).collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            perm: (0..dim).collect(),
            phases: vec![0.0; dim],
        }
    }

    pub fn phases_only(phases: Vec<f64>) -> Self {
        let dim = phases.len();
        Self::new((0..dim).collect(), phases).expect("identity permutation")
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.shuffle(rng);
        let phases = (0..dim).map(|_| rng.gen_range(0.0..TAU)).collect();
        Self::new(perm, phases).expect("shuffled permutation")
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Group product `self * other`, matching `as_unitary(self) * as_unitary(other)`.
    pub fn compose(&self, other: &GaugeElement) -> GaugeElement {
        assert_eq!(self.dim(), other.dim());
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let phases = other
            .perm
            .iter()
            .zip(&other.phases)
            .map(|(&j, &t)| wrap_phase(t + self.phases[j]))
            .collect();
        GaugeElement { perm, phases }
    }

    pub fn inverse(&self) -> GaugeElement {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut phases = vec![0.0; d];
        for n in 0..d {
            perm[self.perm[n]] = n;
            phases[self.perm[n]] = wrap_phase(-self.phases[n]);
        }
        GaugeElement { perm, phases }
    }

    /// The unitary `sum_n e^{i theta_n} |e_{sigma(n)}><e_n|` for the frame `{e_n}` of `reference`.
    pub fn as_unitary(&self, reference: &OrthDecomposition) -> ComplexMatrix {
        assert_eq!(self.dim(), reference.dim());
        let d = self.dim();
        let mut u = ComplexMatrix::zeros(d);
        for n in 0..d {
            let phase = C64::from_polar(1.0, self.phases[n]);
            let target = reference.vector(self.perm[n]).amps();
            let source = reference.vector(n).amps();
            for i in 0..d {
                let a = phase * target[i];
                for j in 0..d {
                    u[(i, j)] += a * source[j].conj();
                }
            }
        }
        u
    }

    /// Recognizes a unitary of the form `sum e^{i theta_n} |e_{sigma(n)}><e_n|`.
    pub fn from_unitary(
        u: &ComplexMatrix,
        reference: &OrthDecomposition,
        tol: f64,
    ) -> Option<GaugeElement> {
        let images: Vec<Ket> = reference.frame().iter().map(|e| e.evolve(u)).collect();
        let (perm, deficit) = match_rays(&images, reference.frame());
        if deficit > tol || !is_permutation(&perm) {
            return None;
        }
        let phases = images
            .iter()
            .zip(&perm)
            .map(|(img, &m)| reference.vector(m).inner(img).arg())
            .collect();
        GaugeElement::new(perm, phases).ok()
    }
}

/// Whether `U` lies in the fiber over `o`: every `U e_n` (with `e_n` from `o0`)
/// lies, up to phase, along a distinct frame vector of `o`.
pub fn fiber_contains(
    u: &ComplexMatrix,
    o: &OrthDecomposition,
    o0: &OrthDecomposition,
    tol: f64,
) -> Result<bool> {
    for dec in [o, o0] {
        if dec.dim() != u.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                found: dec.dim(),
            });
        }
    }
    let deviation = u.unitarity_defect();
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let images: Vec<Ket> = o0.frame().iter().map(|e| e.evolve(u)).collect();
    let (perm, deficit) = match_rays(&images, o.frame());
    Ok(deficit <= tol && is_permutation(&perm))
}

/// Distance `inf ||I - U||` over unitaries carrying `o` onto `o2`, with the
/// operator norm.
///
/// The admissible unitaries are `U = sum_n e^{i theta_n} |psi'_{sigma(n)}><psi_n|`.
/// The global phase is optimized exactly: for a unitary with eigenphases `mu_k`
/// the best `min_chi ||I - e^{i chi} W||` is `2 sin(L / 4)` where `L` is the
/// shortest arc covering all `mu_k`. The remaining relative phases are searched
/// on a coarse grid and refined by golden-section steps; every permutation is
/// tried for `d <= 3`. For `d >= 4` only the max-overlap permutation is used and
/// the relative phases are refined coordinate-wise, so the result is an upper bound.
pub fn distance_dw(o: &OrthDecomposition, o2: &OrthDecomposition) -> Result<f64> {
    if o.dim() != o2.dim() {
        return Err(Error::DimensionMismatch {
            expected: o.dim(),
            found: o2.dim(),
        });
    }
    let d = o.dim();
    if d == 1 {
        return Ok(0.0);
    }
    let perms = if d <= 3 {
        permutations(d)
    } else {
        let (perm, _) = match_rays(o.frame(), o2.frame());
        if is_permutation(&perm) {
            vec![perm]
        } else {
            vec![(0..d).collect()]
        }
    };

    let mut best = f64::INFINITY;
    let mut best_u = None;
    for perm in perms {
        let base = transport_base(o, o2, &perm);
        let cost = |rel: &[f64]| -> f64 { covering_cost(&with_relative_phases(&base, o, rel)) };
        let rel = minimize_relative_phases(&cost, d - 1);
        let value = cost(&rel);
        if value < best {
            best = value;
            best_u = Some(with_relative_phases(&base, o, &rel));
        }
    }
    // report the norm of an explicit admissible unitary at the optimum
    let w = best_u.expect("at least one permutation");
    let chi = optimal_global_phase(&w);
    let u = w.scale(C64::from_polar(1.0, chi));
    Ok(operator_norm(&(&ComplexMatrix::identity(d) - &u)))
}

/// `sum_n |psi'_{sigma(n)}><psi_n|`
fn transport_base(o: &OrthDecomposition, o2: &OrthDecomposition, perm: &[usize]) -> ComplexMatrix {
    let d = o.dim();
    let mut u = ComplexMatrix::zeros(d);
    for (n, &m) in perm.iter().enumerate() {
        u = &u + &ComplexMatrix::outer(o2.vector(m).amps(), o.vector(n).amps());
    }
    u
}

/// `base * sum_n e^{i rel_{n-1}} |psi_n><psi_n|` with the first phase pinned to zero.
fn with_relative_phases(base: &ComplexMatrix, o: &OrthDecomposition, rel: &[f64]) -> ComplexMatrix {
    let d = o.dim();
    let mut diag = ComplexMatrix::zeros(d);
    for n in 0..d {
        let phase = if n == 0 { 0.0 } else { rel[n - 1] };
        diag = &diag + &o.vector(n).projector().scale(C64::from_polar(1.0, phase));
    }
    base * &diag
}

fn covering_arc(w: &ComplexMatrix) -> (f64, f64) {
    let mut mu = unitary_eigenphases(w).expect("transport unitaries are unitary");
    mu.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // largest gap between consecutive phases on the circle
    let n = mu.len();
    let mut gap = mu[0] + TAU - mu[n - 1];
    let mut after_gap = mu[0];
    for k in 1..n {
        let g = mu[k] - mu[k - 1];
        if g > gap {
            gap = g;
            after_gap = mu[k];
        }
    }
    let arc = TAU - gap;
    (arc, after_gap + 0.5 * arc)
}

fn covering_cost(w: &ComplexMatrix) -> f64 {
    let (arc, _) = covering_arc(w);
    2.0 * (arc / 4.0).sin()
}

fn optimal_global_phase(w: &ComplexMatrix) -> f64 {
    let (_, center) = covering_arc(w);
    -center
}

fn minimize_relative_phases(cost: &dyn Fn(&[f64]) -> f64, n: usize) -> Vec<f64> {
    match n {
        1 => {
            let grid = 64;
            let (x, _) = grid_then_golden(|x| cost(&[x]), grid);
            vec![x]
        }
        2 => {
            let grid = 32;
            let h = TAU / grid as f64;
            let mut best = (f64::INFINITY, vec![0.0, 0.0]);
            for i in 0..grid {
                for j in 0..grid {
                    let p = vec![i as f64 * h, j as f64 * h];
                    let v = cost(&p);
                    if v < best.0 {
                        best = (v, p);
                    }
                }
            }
            coordinate_refine(cost, best.1, h, 6)
        }
        _ => {
            let start = vec![0.0; n];
            let mut x = start;
            for k in 0..n {
                let (xk, _) = grid_then_golden(
                    |t| {
                        let mut y = x.clone();
                        y[k] = t;
                        cost(&y)
                    },
                    16,
                );
                x[k] = xk;
            }
            coordinate_refine(cost, x, TAU / 16.0, 4)
        }
    }
}

fn coordinate_refine(
    cost: &dyn Fn(&[f64]) -> f64,
    mut x: Vec<f64>,
    mut half_width: f64,
    rounds: usize,
) -> Vec<f64> {
    for _ in 0..rounds {
        for k in 0..x.len() {
            let center = x[k];
            let (t, _) = golden_section(
                |t| {
                    let mut y = x.clone();
                    y[k] = t;
                    cost(&y)
                },
                center - half_width,
                center + half_width,
                1e-12,
            );
            x[k] = t;
        }
        half_width *= 0.5;
    }
    x
}

/// Scans `[0, 2 pi)` on `points` nodes, then golden-section refines around the best node.
pub(crate) fn grid_then_golden<F: Fn(f64) -> f64>(f: F, points: usize) -> (f64, f64) {
    let h = TAU / points as f64;
    let (mut bx, mut bv) = (0.0, f64::INFINITY);
    for i in 0..points {
        let x = i as f64 * h;
        let v = f(x);
        if v < bv {
            bx = x;
            bv = v;
        }
    }
    let (x, v) = golden_section(&f, bx - h, bx + h, 1e-12);
    if v <= bv {
        (x, v)
    } else {
        (bx, bv)
    }
}

pub(crate) fn golden_section<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// Bloch vector `n` with `|psi_1><psi_1| = (I + n.sigma)/2`, reduced to the
/// representative with `n_z >= 0` (ties: `n_x >= 0`, then `n_y >= 0`).
pub fn bloch_chart(o: &OrthDecomposition) -> Result<[f64; 3]> {
    if o.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: o.dim(),
        });
    }
    let p = o.vector(0).projector();
    let n = [
        2.0 * p[(0, 1)].re,
        -2.0 * p[(0, 1)].im,
        2.0 * p[(0, 0)].re - 1.0,
    ];
    let eps = 1e-12;
    let flip = if n[2].abs() > eps {
        n[2] < 0.0
    } else if n[0].abs() > eps {
        n[0] < 0.0
    } else {
        n[1] < 0.0
    };
    Ok(if flip { [-n[0], -n[1], -n[2]] } else { n })
}
