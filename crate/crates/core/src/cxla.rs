//! Small dense complex linear algebra.
//!
//! Everything here targets matrices of a handful of rows (antenna counts up
//! to ~8). Decompositions are Jacobi iterations: two-sided for Hermitian
//! eigenvalues, one-sided (Hestenes) for singular values. Both are
//! deterministic and need no external solver.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::math::{log2_1p, sqrt};
use crate::{Error, Result};

/// Relative asymmetry tolerated before an input is rejected as non-Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-8;

const MAX_SWEEPS: usize = 64;

/// A dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CxVector {
    entries: Vec<Complex64>,
}

impl CxVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("vector"));
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Self { entries })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![Complex64::new(0.0, 0.0); len.max(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    /// Squared Euclidean norm `Σ|v_i|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.norm_sqr())
    }

    /// Hermitian inner product `selfᴴ · other`.
    pub fn dot(&self, other: &CxVector) -> Complex64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// The vector as an `n × 1` matrix.
    pub fn to_column(&self) -> CxMatrix {
        CxMatrix {
            rows: self.len(),
            cols: 1,
            data: self.entries.clone(),
        }
    }
}

impl Index<usize> for CxVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}

/// A dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CxMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CxMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty("matrix"));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)
        })
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |r, c| {
            Complex64::new(if r == c { values[r] } else { 0.0 }, 0.0)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> CxVector {
        CxVector {
            entries: (0..self.rows).map(|r| self[(r, c)]).collect(),
        }
    }

    pub fn row(&self, r: usize) -> CxVector {
        CxVector {
            entries: self.data[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &CxMatrix) -> Result<CxMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: rhs.rows,
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).map(|k| self[(r, k)] * rhs[(k, c)]).sum()
        }))
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &CxVector) -> Result<CxVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok(CxVector {
            entries: (0..self.rows)
                .map(|r| (0..self.cols).map(|k| self[(r, k)] * v[k]).sum())
                .collect(),
        })
    }

    pub fn scale(&self, factor: f64) -> CxMatrix {
        CxMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &CxMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }
}

impl Index<(usize, usize)> for CxMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CxMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Conjugate transpose.
pub fn hermitian(a: &CxMatrix) -> CxMatrix {
    CxMatrix::from_fn(a.cols, a.rows, |r, c| a[(c, r)].conj())
}

/// Relative asymmetry `max|A − Aᴴ| / max(1, max|A|)`.
fn asymmetry(a: &CxMatrix) -> f64 {
    let scale = a.max_abs().max(1.0);
    a.max_abs_diff(&hermitian(a)) / scale
}

/// Jacobi rotation annihilating the off-diagonal entry `g` of the 2×2
/// Hermitian block `[[app, g], [conj(g), aqq]]`.
///
/// The unitary is `G = [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]` with `g = |g|e^{iφ}`.
#[derive(Clone, Copy)]
struct Rotation {
    c: f64,
    s: f64,
    phase: Complex64,
}

impl Rotation {
    fn new(app: f64, aqq: f64, g: Complex64) -> Option<Self> {
        let mag = g.norm();
        if mag == 0.0 {
            return None;
        }
        let phase = g / mag;
        let tau = (aqq - app) / (2.0 * mag);
        let t = if tau >= 0.0 {
            1.0 / (tau + sqrt(1.0 + tau * tau))
        } else {
            -1.0 / (-tau + sqrt(1.0 + tau * tau))
        };
        let c = 1.0 / sqrt(1.0 + t * t);
        Some(Self { c, s: t * c, phase })
    }

    /// `A ← A·G` restricted to columns `p`, `q`.
    fn apply_right(&self, a: &mut CxMatrix, p: usize, q: usize) {
        let back = self.phase.conj();
        for k in 0..a.rows {
            let akp = a[(k, p)];
            let akq = a[(k, q)] * back;
            a[(k, p)] = akp * self.c - akq * self.s;
            a[(k, q)] = akp * self.s + akq * self.c;
        }
    }

    /// `A ← Gᴴ·A` restricted to rows `p`, `q`.
    fn apply_left(&self, a: &mut CxMatrix, p: usize, q: usize) {
        for k in 0..a.cols {
            let apk = a[(p, k)];
            let aqk = a[(q, k)] * self.phase;
            a[(p, k)] = apk * self.c - aqk * self.s;
            a[(q, k)] = apk * self.s + aqk * self.c;
        }
    }
}

/// Eigenvalues of a Hermitian matrix, in descending order.
///
/// The input is symmetrized as `(A + Aᴴ)/2` first; an asymmetry above
/// [`HERMITIAN_TOLERANCE`] is rejected.
pub fn hermitian_eigenvalues(a: &CxMatrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let asym = asymmetry(a);
    if asym > HERMITIAN_TOLERANCE {
        return Err(Error::NonHermitianInput { asymmetry: asym });
    }
    let n = a.rows;
    let ah = hermitian(a);
    let mut m = CxMatrix::from_fn(n, n, |r, c| (a[(r, c)] + ah[(r, c)]) * 0.5);
    for i in 0..n {
        m[(i, i)].im = 0.0;
    }

    let total = m.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| m[(r, c)].norm_sqr())
            .sum();
        if sqrt(off) <= f64::EPSILON * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if let Some(rot) = Rotation::new(m[(p, p)].re, m[(q, q)].re, m[(p, q)]) {
                    rot.apply_right(&mut m, p, q);
                    rot.apply_left(&mut m, p, q);
                    m[(p, q)] = Complex64::new(0.0, 0.0);
                    m[(q, p)] = Complex64::new(0.0, 0.0);
                    m[(p, p)].im = 0.0;
                    m[(q, q)].im = 0.0;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// `log2 det(I + c·A)` for Hermitian positive semidefinite `A`, in bits.
///
/// Computed as `Σ log2(1 + c·e_i)` over the eigenvalues of `A`; eigenvalues
/// that round to slightly negative values are clamped to zero.
pub fn log_det_identity_plus(c: f64, a: &CxMatrix) -> Result<f64> {
    if !c.is_finite() || c < 0.0 {
        return Err(Error::InvalidParameter {
            name: "c",
            reason: "must be finite and nonnegative",
        });
    }
    let eig = hermitian_eigenvalues(a)?;
    if c == 0.0 {
        return Ok(0.0);
    }
    Ok(eig.iter().map(|&e| log2_1p(c * e.max(0.0))).sum())
}

/// Singular values in descending order; `min(rows, cols)` of them.
pub fn singular_values(a: &CxMatrix) -> Vec<f64> {
    // Orthogonalize the columns of a tall matrix; column norms are then the
    // singular values.
    let mut work = if a.cols <= a.rows {
        a.clone()
    } else {
        hermitian(a)
    };
    let n = work.cols;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let col_p = work.column(p);
                let col_q = work.column(q);
                let app = col_p.norm_sqr();
                let aqq = col_q.norm_sqr();
                let g = col_p.dot(&col_q);
                if g.norm() <= f64::EPSILON * sqrt(app * aqq) {
                    continue;
                }
                if let Some(rot) = Rotation::new(app, aqq, g) {
                    rot.apply_right(&mut work, p, q);
                    rotated = true;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n).map(|c| work.column(c).norm()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// An `M × (M−1)` matrix with orthonormal columns spanning the orthogonal
/// complement of `v`, so that `Qᴴ·v = 0`.
///
/// Built from the Householder reflector that maps `e₁` onto the direction
/// of `v`; its remaining columns form the complement.
pub fn orthonormal_complement(v: &CxVector) -> Result<CxMatrix> {
    let m = v.len();
    if m < 2 {
        return Err(Error::InvalidParameter {
            name: "v",
            reason: "complement needs at least two entries",
        });
    }
    let norm = v.norm();
    if !(norm > 1e-300) {
        return Err(Error::ZeroVector);
    }
    // Rotate the phase so the first entry of x is real and nonnegative.
    let lead = v[0];
    let unphase = if lead.norm() > 0.0 {
        (lead / lead.norm()).conj()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let x: Vec<Complex64> = v.entries().iter().map(|z| z * unphase / norm).collect();
    let mut u = x;
    u[0] += 1.0;
    let u_norm_sqr: f64 = u.iter().map(|z| z.norm_sqr()).sum();

    // Columns 1..M of H = I − 2uuᴴ/‖u‖².
    Ok(CxMatrix::from_fn(m, m - 1, |r, c| {
        let col = c + 1;
        let id = if r == col { 1.0 } else { 0.0 };
        Complex64::new(id, 0.0) - u[r] * u[col].conj() * (2.0 / u_norm_sqr)
    }))
}
