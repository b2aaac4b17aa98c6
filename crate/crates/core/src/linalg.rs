//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here is sized for `d <= 16`: matrices are stored row-major in a
//! flat `Vec`, the Hermitian eigensolver is a cyclic complex Jacobi sweep, and
//! exponentials of `-i s H` go through the eigendecomposition so the result is
//! unitary to rounding.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default minimum eigen-gap below which a spectrum counts as degenerate.
pub const DEFAULT_GAP_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a perfect square.
    pub fn from_vec(data: Vec<C64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// `|a><b|`
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        assert_eq!(a.len(), b.len());
        let dim = a.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = a[i] * b[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * z).collect(),
        }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(C64::new(x, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `||U^dagger U - I||_F`
    pub fn unitarity_defect(&self) -> f64 {
        (&(&self.adjoint() * self) - &Self::identity(self.dim)).frobenius_norm()
    }

    /// `||H - H^dagger||_F`
    pub fn hermiticity_defect(&self) -> f64 {
        (self - &self.adjoint()).frobenius_norm()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `<a|M|b>`
    pub fn sandwich(&self, a: &[C64], b: &[C64]) -> C64 {
        inner(a, &self.apply(b))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `diag(a, b)` as a `(da + db)`-dimensional matrix.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let n = a.dim + b.dim;
        let mut out = Self::zeros(n);
        for i in 0..a.dim {
            for j in 0..a.dim {
                out[(i, j)] = a[(i, j)];
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                out[(a.dim + i, a.dim + j)] = b[(i, j)];
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Random Hermitian matrix with entries of order one.
    pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..dim {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    /// Random unitary `exp(-i H)` for a random Hermitian `H` scaled to cover the group.
    pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let h = Self::random_hermitian(dim, rng).scale_real(std::f64::consts::PI);
        expm_skew(&h, 1.0).expect("random Hermitian generator")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

/// `<a|b>`, antilinear in the first argument.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Unit vector in a finite-dimensional Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    amps: Vec<C64>,
}

impl Ket {
    /// Normalizes `amps`; fails on the zero vector.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let norm = vec_norm(&amps);
        if amps.is_empty() || !(norm > 1e-300) || !norm.is_finite() {
            return Err(Error::InvalidArgument(
                "cannot normalize a zero vector".into(),
            ));
        }
        Ok(Self {
            amps: amps.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Ket) -> C64 {
        inner(&self.amps, &other.amps)
    }

    pub fn with_phase(&self, theta: f64) -> Self {
        let z = C64::from_polar(1.0, theta);
        Self {
            amps: self.amps.iter().map(|a| a * z).collect(),
        }
    }

    /// Applies a unitary; the result is renormalized to absorb rounding.
    pub fn evolve(&self, u: &ComplexMatrix) -> Self {
        Self::new(u.apply(&self.amps)).expect("unitary image of a unit vector")
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amps, &self.amps)
    }

    /// Same ray, with the largest-magnitude component made real and positive.
    /// Among components tied in magnitude (within 1e-12) the first one wins.
    pub fn phase_fixed(&self) -> Self {
        let max = self.amps.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pivot = self
            .amps
            .iter()
            .position(|z| z.norm() >= max - 1e-12)
            .unwrap_or(0);
        let z = self.amps[pivot];
        let rot = z.conj() / z.norm();
        let mut amps: Vec<C64> = self.amps.iter().map(|a| a * rot).collect();
        amps[pivot] = C64::new(amps[pivot].norm(), 0.0);
        Self { amps }
    }
}

/// Output of [`hermitian_eig`].
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Ket>,
    /// Smallest gap between consecutive eigenvalues (`inf` for `d = 1`).
    pub min_gap: f64,
    /// Set when `min_gap` falls below the gap tolerance.
    pub degenerate: bool,
}

impl Eigen {
    pub fn pairs(&self) -> impl Iterator<Item = (f64, &Ket)> {
        self.values.iter().copied().zip(self.vectors.iter())
    }

    /// `sum_n lambda_n |v_n><v_n|`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = self.vectors[0].dim();
        let mut m = ComplexMatrix::zeros(dim);
        for (lambda, v) in self.pairs() {
            m = &m + &v.projector().scale_real(lambda);
        }
        m
    }

    /// Matrix whose columns are the eigenvectors.
    pub fn vector_matrix(&self) -> ComplexMatrix {
        let n = self.vectors.len();
        let mut m = ComplexMatrix::zeros(n);
        for (j, v) in self.vectors.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = v.amps()[i];
            }
        }
        m
    }
}

/// Eigendecomposition of a Hermitian matrix with the default gap tolerance.
pub fn hermitian_eig(h: &ComplexMatrix, tol: f64) -> Result<Eigen> {
    hermitian_eig_with_gap(h, tol, DEFAULT_GAP_TOL)
}

/// Cyclic complex Jacobi eigensolver.
///
/// Eigenpairs come back sorted ascending by eigenvalue. Equal eigenvalues are
/// ordered by descending magnitude of the first nonzero amplitude, and every
/// eigenvector is phase-fixed with [`Ket::phase_fixed`].
pub fn hermitian_eig_with_gap(h: &ComplexMatrix, tol: f64, gap_tol: f64) -> Result<Eigen> {
    let deviation = h.hermiticity_defect();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.dim();
    // symmetrize so rounding in the input cannot leak into the rotations
    let mut a = (h + &h.adjoint()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-16 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, Ket)> = (0..n)
        .map(|j| {
            let ket = Ket::new(v.column(j)).expect("Jacobi columns are unit vectors");
            (a[(j, j)].re, ket.phase_fixed())
        })
        .collect();

    let tie = 1e-12 * scale.max(1.0);
    pairs.sort_by(|(la, va), (lb, vb)| {
        if (la - lb).abs() <= tie {
            first_nonzero_magnitude(vb)
                .partial_cmp(&first_nonzero_magnitude(va))
                .unwrap_or(std::cmp::Ordering::Equal)
        } else {
            la.partial_cmp(lb).unwrap_or(std::cmp::Ordering::Equal)
        }
    });

    let values: Vec<f64> = pairs.iter().map(|(l, _)| *l).collect();
    let min_gap = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    Ok(Eigen {
        vectors: pairs.into_iter().map(|(_, k)| k).collect(),
        values,
        min_gap,
        degenerate: min_gap < gap_tol,
    })
}

fn first_nonzero_magnitude(k: &Ket) -> f64 {
    k.amps()
        .iter()
        .map(|z| z.norm())
        .find(|&m| m > 1e-12)
        .unwrap_or(0.0)
}

/// One Jacobi rotation annihilating `a[p][q]`.
///
/// With `a[p][q] = r e^{i alpha}` the rotation is `G = diag(1, e^{-i alpha}) R(theta)`,
/// which first makes the pivot real and then applies the real symmetric rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let zeta = (aqq - app) / (2.0 * r);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -pc * s;
    let g_qq = pc * c;

    let n = a.dim();
    for i in 0..n {
        let (x, y) = (a[(i, p)], a[(i, q)]);
        a[(i, p)] = x * g_pp + y * g_qp;
        a[(i, q)] = x * g_pq + y * g_qq;
        let (x, y) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = x * g_pp + y * g_qp;
        v[(i, q)] = x * g_pq + y * g_qq;
    }
    for j in 0..n {
        let (x, y) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = g_pp.conj() * x + g_qp.conj() * y;
        a[(q, j)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// `exp(-i s H)` for Hermitian `H`, assembled as `V exp(-i s Lambda) V^dagger`.
pub fn expm_skew(h: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    let tol = 1e-10 * h.frobenius_norm().max(1.0);
    let eig = hermitian_eig_with_gap(h, tol, 0.0)?;
    let n = h.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (lambda, ket) in eig.pairs() {
        let phase = C64::from_polar(1.0, -s * lambda);
        let amps = ket.amps();
        for i in 0..n {
            let ai = amps[i] * phase;
            for j in 0..n {
                out[(i, j)] += ai * amps[j].conj();
            }
        }
    }
    // One Newton-Schulz sweep S(3I - S^dagger S)/2 cancels the O(ulp) norm bias of the
    // spectral assembly, which otherwise accumulates linearly over long products.
    let gram = &out.adjoint() * &out;
    let corr = &ComplexMatrix::identity(n).scale_real(3.0) - &gram;
    Ok((&out * &corr).scale_real(0.5))
}

/// Largest singular value, `sqrt(lambda_max(A^dagger A))`.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    let gram = &a.adjoint() * a;
    let tol = 1e-8 * gram.frobenius_norm().max(1.0);
    let eig = hermitian_eig_with_gap(&gram, tol, 0.0).expect("Gram matrices are Hermitian");
    eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Eigenpairs `(mu, v)` of a unitary with `U v = e^{i mu} v`, `mu` in `(-pi, pi]`,
/// sorted by ascending `mu`.
///
/// A unitary `U` is normal, so `A = (U + U^dagger)/2` and `B = (U - U^dagger)/2i`
/// commute and `A + k B` shares its eigenvectors for a generic real `k`. Several
/// values of `k` are tried and the one whose eigenvectors best diagonalize `U` wins.
pub fn unitary_eig(u: &ComplexMatrix) -> Result<Vec<(f64, Ket)>> {
    let deviation = u.unitarity_defect();
    if deviation > 1e-8 {
        return Err(Error::NotUnitary { deviation });
    }
    let ud = u.adjoint();
    let a = (u + &ud).scale_real(0.5);
    let b = (u - &ud).scale(C64::new(0.0, -0.5));
    let mut best: Option<(f64, Vec<(f64, Ket)>)> = None;
    for kappa in [
        0.618_033_988_749_895,
        0.276_393_202_250_021,
        1.324_717_957_244_746,
        -0.754_877_666_246_693,
    ] {
        let m = &a + &b.scale_real(kappa);
        let eig = hermitian_eig_with_gap(&m, 1e-8, 0.0)?;
        let mut worst = 1.0_f64;
        let mut pairs = Vec::with_capacity(u.dim());
        for v in eig.vectors {
            let z = u.sandwich(v.amps(), v.amps());
            worst = worst.min(z.norm());
            pairs.push((z.arg(), v));
        }
        let better = best.as_ref().is_none_or(|(w, _)| worst > *w);
        if better {
            best = Some((worst, pairs));
        }
        if worst >= 1.0 - 1e-12 {
            break;
        }
    }
    let mut pairs = best.map(|(_, p)| p).unwrap_or_default();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(pairs)
}

/// Eigenphases of a unitary matrix, each in `(-pi, pi]`, sorted ascending.
pub fn unitary_eigenphases(u: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(unitary_eig(u)?.into_iter().map(|(mu, _)| mu).collect())
}

/// Hermitian `A` with `U = exp(i A)` and spectrum in `(-pi, pi]`.
pub fn unitary_log(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(u.dim());
    for (mu, v) in unitary_eig(u)? {
        out = &out + &v.projector().scale_real(mu);
    }
    Ok(out)
}

/// Maps an angle onto `[0, 2 pi)`.
pub fn wrap_phase(theta: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let w = theta.rem_euclid(tau);
    if w >= tau {
        0.0
    } else {
        w
    }
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = wrap_phase(a - b);
    d.min(std::f64::consts::TAU - d)
}

pub mod pauli {
    use super::{ComplexMatrix, C64, ONE, ZERO};

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![ZERO, C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), ZERO],
        ])
        .unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::diag(&[ONE, -ONE])
    }

    /// Hadamard gate.
    pub fn hadamard() -> ComplexMatrix {
        (&x() + &z()).scale_real(std::f64::consts::FRAC_1_SQRT_2)
    }
}
