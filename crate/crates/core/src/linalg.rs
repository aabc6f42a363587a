//! Dense linear algebra kernels sized for desk-scale networks.
//!
//! Everything here is hand-rolled so the crate stays `no_std`: a square
//! complex matrix, a Hermitian matrix with enforced conjugate symmetry, a
//! cyclic Jacobi eigensolver for Hermitian matrices, the isometric `svec`
//! embedding of Hermitian matrices into real vectors, the real-symmetric
//! block embedding, and small real factorizations (Cholesky, LU, rank).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

#[cfg(not(feature = "std"))]
use num_traits::Float;

pub const SQRT_2: f64 = core::f64::consts::SQRT_2;

#[derive(Clone, Debug, PartialEq)]
pub enum LinalgError {
    /// Jacobi sweeps exhausted before the off-diagonal mass vanished.
    EigenNoConvergence { sweeps: usize, off_norm: f64 },
    /// A pivot too small for a stable factorization.
    SingularFactor { what: &'static str, pivot: f64 },
    Shape(String),
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::EigenNoConvergence { sweeps, off_norm } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
            ),
            LinalgError::SingularFactor { what, pivot } => {
                write!(f, "{what} factorization hit a near-zero pivot ({pivot:e})")
            }
            LinalgError::Shape(msg) => write!(f, "shape mismatch: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LinalgError {}

// ---------------------------------------------------------------------------
// Square complex matrix (not necessarily Hermitian), used for the admittance
// matrix Y which is complex symmetric.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] = z;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] += z;
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.n);
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn row_sum(&self, i: usize) -> Complex64 {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }
}

// ---------------------------------------------------------------------------
// Hermitian matrix with conjugate symmetry enforced on construction.
// ---------------------------------------------------------------------------

/// Dense complex Hermitian matrix. Construction symmetrizes the input as
/// `(A + A^H)/2`, so `A == A^H` holds exactly afterwards and the diagonal is
/// real.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Symmetrize an arbitrary square complex matrix into a Hermitian one.
    pub fn from_complex(raw: &ComplexMatrix) -> Self {
        let n = raw.dim();
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(raw.get(i, i).re, 0.0);
            for j in (i + 1)..n {
                let z = 0.5 * (raw.get(i, j) + raw.get(j, i).conj());
                m.data[i * n + j] = z;
                m.data[j * n + i] = z.conj();
            }
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut raw = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                raw.set(i, j, f(i, j));
            }
        }
        Self::from_complex(&raw)
    }

    /// Rank-1 outer product `v v^H`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = v[i] * v[j].conj();
            }
        }
        // exact by construction, but clean rounding on the diagonal
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(m.data[i * n + i].re, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    /// Set the pair `(i, j) = z`, `(j, i) = conj(z)`. On the diagonal the
    /// imaginary part is discarded.
    pub fn set_pair(&mut self, i: usize, j: usize, z: Complex64) {
        if i == j {
            self.data[i * self.n + i] = Complex64::new(z.re, 0.0);
        } else {
            self.data[i * self.n + j] = z;
            self.data[j * self.n + i] = z.conj();
        }
    }

    pub fn add_scaled(&mut self, other: &HermitianMatrix, w: f64) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += w * b;
        }
    }

    pub fn scale(&mut self, w: f64) {
        for a in self.data.iter_mut() {
            *a *= w;
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    /// `Tr(A B)` for Hermitian `A = self`, `B = other`. The product trace of
    /// two Hermitian matrices is real; it is accumulated directly as
    /// `sum_{ij} Re(A_ij) Re(B_ij) + Im(A_ij) Im(B_ij)`.
    pub fn trace_product(&self, other: &HermitianMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        let mut acc = 0.0;
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            acc += a.re * b.re + a.im * b.im;
        }
        acc
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.n);
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Deviation from exact conjugate symmetry; zero by construction, kept
    /// for contract checks in tests.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Isometric embedding into `R^{n^2}`: diagonal entries first, then
    /// `sqrt(2) Re`, `sqrt(2) Im` of the strict upper triangle (row-major).
    /// Satisfies `Tr(A B) = svec(A) . svec(B)`.
    pub fn svec(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            out.push(self.get(i, i).re);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let z = self.get(i, j);
                out.push(SQRT_2 * z.re);
                out.push(SQRT_2 * z.im);
            }
        }
        out
    }

    pub fn from_svec(n: usize, s: &[f64]) -> Self {
        debug_assert_eq!(s.len(), n * n);
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(s[i], 0.0);
        }
        let mut k = n;
        for i in 0..n {
            for j in (i + 1)..n {
                let z = Complex64::new(s[k] / SQRT_2, s[k + 1] / SQRT_2);
                k += 2;
                m.data[i * n + j] = z;
                m.data[j * n + i] = z.conj();
            }
        }
        m
    }

    /// Real-symmetric block embedding `Z -> [[Re Z, -Im Z], [Im Z, Re Z]]`,
    /// returned as a Hermitian matrix with zero imaginary part. Traces double
    /// under this map; callers fix the convention by halving once.
    pub fn embed_real(&self) -> HermitianMatrix {
        let n = self.n;
        let mut m = HermitianMatrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.get(i, j);
                m.data[i * 2 * n + j] = Complex64::new(z.re, 0.0);
                m.data[i * 2 * n + (n + j)] = Complex64::new(-z.im, 0.0);
                m.data[(n + i) * 2 * n + j] = Complex64::new(z.im, 0.0);
                m.data[(n + i) * 2 * n + (n + j)] = Complex64::new(z.re, 0.0);
            }
        }
        m
    }

    /// Inverse of [`embed_real`](Self::embed_real) by block averaging; maps a
    /// `2n x 2n` real-symmetric matrix back to an `n x n` Hermitian one.
    pub fn unembed_real(embedded: &HermitianMatrix) -> HermitianMatrix {
        let n2 = embedded.n;
        debug_assert_eq!(n2 % 2, 0);
        let n = n2 / 2;
        HermitianMatrix::from_fn(n, |i, j| {
            let re = 0.5 * (embedded.get(i, j).re + embedded.get(n + i, n + j).re);
            let im = 0.5 * (embedded.get(n + i, j).re - embedded.get(i, n + j).re);
            Complex64::new(re, im)
        })
    }
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigendecomposition for Hermitian matrices.
// ---------------------------------------------------------------------------

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted in
/// descending order, `vectors[k]` the unit eigenvector for `values[k]`.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
    pub sweeps: usize,
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi with complex plane rotations. Each rotation annihilates the
/// (p, q) entry after absorbing its phase, so the update angles come from the
/// same quadratic as in the real-symmetric case.
pub fn eigen_hermitian(a: &HermitianMatrix) -> Result<Eigen, LinalgError> {
    let n = a.dim();
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: Vec::new(),
            sweeps: 0,
        });
    }
    let mut m = a.clone();
    // eigenvector accumulator, column-major access through get/set
    let mut q = HermitianMatrix::identity(n);
    // q is used as a plain complex matrix here; unitary, not Hermitian
    let mut qd = q.data.clone();
    q.data.clear();

    let scale = m.frob_norm().max(1.0);
    let tol = 1e-15 * scale;

    let off_norm = |m: &HermitianMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * m.get(i, j).norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&m) > tol {
        if sweeps >= JACOBI_MAX_SWEEPS {
            return Err(LinalgError::EigenNoConvergence {
                sweeps,
                off_norm: off_norm(&m),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for qx in (p + 1)..n {
                let beta = m.get(p, qx);
                let mag = beta.norm();
                if mag <= tol / (n as f64) {
                    continue;
                }
                let phase = beta / mag; // e^{j phi}
                // annihilation condition: t^2 - 2 tau t - 1 = 0, small root
                let tau = (m.get(qx, qx).re - m.get(p, p).re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sigma = t * c;
                let s = sigma * phase.conj(); // complex rotation entry

                // column update: col_p <- c col_p + s col_q ; col_q <- -conj(s) col_p + c col_q
                for k in 0..n {
                    let akp = m.get(k, p);
                    let akq = m.get(k, qx);
                    m.data[k * n + p] = c * akp + s * akq;
                    m.data[k * n + qx] = -s.conj() * akp + c * akq;
                }
                // row update with the conjugate coefficients
                for k in 0..n {
                    let apk = m.get(p, k);
                    let aqk = m.get(qx, k);
                    m.data[p * n + k] = c * apk + s.conj() * aqk;
                    m.data[qx * n + k] = -s * apk + c * aqk;
                }
                m.data[p * n + qx] = Complex64::new(0.0, 0.0);
                m.data[qx * n + p] = Complex64::new(0.0, 0.0);
                m.data[p * n + p] = Complex64::new(m.get(p, p).re, 0.0);
                m.data[qx * n + qx] = Complex64::new(m.get(qx, qx).re, 0.0);

                // accumulate Q <- Q J
                for k in 0..n {
                    let qkp = qd[k * n + p];
                    let qkq = qd[k * n + qx];
                    qd[k * n + p] = c * qkp + s * qkq;
                    qd[k * n + qx] = -s.conj() * qkp + c * qkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // descending by eigenvalue; stable order for deterministic output
    order.sort_by(|&i, &j| {
        m.get(j, j)
            .re
            .partial_cmp(&m.get(i, i).re)
            .unwrap_or(core::cmp::Ordering::Equal)
    });

    let values: Vec<f64> = order.iter().map(|&i| m.get(i, i).re).collect();
    let vectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| qd[row * n + col]).collect())
        .collect();

    Ok(Eigen {
        values,
        vectors,
        sweeps,
    })
}

// ---------------------------------------------------------------------------
// Small real-matrix kernels: rectangular storage, rank, Cholesky, LU.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `y = M x`
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x.iter())
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
            })
            .collect()
    }

    /// `y = M^T x`
    pub fn mul_vec_t(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i).iter()) {
                *o += a * xi;
            }
        }
        out
    }
}

/// Numerical rank by Gaussian elimination with partial pivoting, relative
/// tolerance against the largest entry.
pub fn matrix_rank(m: &RealMatrix, rel_tol: f64) -> usize {
    let mut a = m.clone();
    let max_abs = a.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max_abs == 0.0 {
        return 0;
    }
    let tol = rel_tol * max_abs;
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row >= a.rows {
            break;
        }
        let (best_row, best_val) = (pivot_row..a.rows)
            .map(|r| (r, a.get(r, col).abs()))
            .fold((pivot_row, 0.0), |acc, it| if it.1 > acc.1 { it } else { acc });
        if best_val <= tol {
            continue;
        }
        if best_row != pivot_row {
            for j in 0..a.cols {
                let tmp = a.get(pivot_row, j);
                a.set(pivot_row, j, a.get(best_row, j));
                a.set(best_row, j, tmp);
            }
        }
        let piv = a.get(pivot_row, col);
        for r in (pivot_row + 1)..a.rows {
            let factor = a.get(r, col) / piv;
            if factor != 0.0 {
                for j in col..a.cols {
                    let v = a.get(r, j) - factor * a.get(pivot_row, j);
                    a.set(r, j, v);
                }
            }
        }
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// Cholesky factor of a symmetric positive definite matrix.
#[derive(Clone, Debug)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>, // lower triangle, row-major full storage
}

impl Cholesky {
    pub fn factor(a: &RealMatrix) -> Result<Self, LinalgError> {
        if a.rows != a.cols {
            return Err(LinalgError::Shape(String::from(
                "cholesky needs a square matrix",
            )));
        }
        let n = a.rows;
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = a.get(i, j);
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(LinalgError::SingularFactor {
                            what: "cholesky",
                            pivot: sum,
                        });
                    }
                    l[i * n + i] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        Ok(Self { n, l })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        debug_assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l[i * n + k] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                y[i] -= self.l[k * n + i] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        y
    }
}

/// Solve `A x = b` by LU with partial pivoting; consumes a copy of `A`.
pub fn lu_solve(a: &RealMatrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    if a.rows != a.cols || b.len() != a.rows {
        return Err(LinalgError::Shape(String::from("lu_solve expects square A")));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut x = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let (best, mag) = (col..n)
            .map(|r| (r, m.get(r, col).abs()))
            .fold((col, 0.0), |acc, it| if it.1 > acc.1 { it } else { acc });
        if mag < 1e-14 * (1.0 + m.data.iter().fold(0.0f64, |a, v| a.max(v.abs()))) {
            return Err(LinalgError::SingularFactor {
                what: "lu",
                pivot: mag,
            });
        }
        if best != col {
            for j in 0..n {
                let tmp = m.get(col, j);
                m.set(col, j, m.get(best, j));
                m.set(best, j, tmp);
            }
            x.swap(col, best);
            perm.swap(col, best);
        }
        let piv = m.get(col, col);
        for r in (col + 1)..n {
            let f = m.get(r, col) / piv;
            if f != 0.0 {
                for j in col..n {
                    let v = m.get(r, j) - f * m.get(col, j);
                    m.set(r, j, v);
                }
                x[r] -= f * x[col];
            }
        }
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            x[i] -= m.get(i, k) * x[k];
        }
        x[i] /= m.get(i, i);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
        HermitianMatrix::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    #[test]
    fn construction_symmetrizes() {
        let mut raw = ComplexMatrix::zeros(2);
        raw.set(0, 0, Complex64::new(1.0, 0.5));
        raw.set(0, 1, Complex64::new(2.0, 1.0));
        raw.set(1, 0, Complex64::new(0.0, 0.0));
        raw.set(1, 1, Complex64::new(-1.0, -2.0));
        let h = HermitianMatrix::from_complex(&raw);
        assert_eq!(h.hermitian_defect(), 0.0);
        assert_eq!(h.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(h.get(0, 1), Complex64::new(1.0, 0.5));
        assert_eq!(h.get(1, 0), Complex64::new(1.0, -0.5));
    }

    #[test]
    fn svec_is_an_isometry_for_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = random_hermitian(&mut rng, 4);
            let b = random_hermitian(&mut rng, 4);
            let dot: f64 = a
                .svec()
                .iter()
                .zip(b.svec().iter())
                .map(|(x, y)| x * y)
                .sum();
            // direct complex trace of A*B
            let mut tr = Complex64::new(0.0, 0.0);
            for i in 0..4 {
                for k in 0..4 {
                    tr += a.get(i, k) * b.get(k, i);
                }
            }
            assert_abs_diff_eq!(tr.im, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(dot, tr.re, epsilon = 1e-12);
            assert_abs_diff_eq!(dot, a.trace_product(&b), epsilon = 1e-12);
        }
    }

    #[test]
    fn svec_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_hermitian(&mut rng, 5);
        let b = HermitianMatrix::from_svec(5, &a.svec());
        let mut diff = a.clone();
        diff.add_scaled(&b, -1.0);
        assert!(diff.max_abs() < 1e-15);
    }

    #[test]
    fn eigen_recovers_diagonal() {
        let mut d = HermitianMatrix::zeros(3);
        d.set_pair(0, 0, Complex64::new(3.0, 0.0));
        d.set_pair(1, 1, Complex64::new(-1.0, 0.0));
        d.set_pair(2, 2, Complex64::new(0.5, 0.0));
        let e = eigen_hermitian(&d).unwrap();
        assert_eq!(e.values, vec![3.0, 0.5, -1.0]);
    }

    #[test]
    fn eigen_satisfies_eigen_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2usize, 3, 5, 8] {
            let a = random_hermitian(&mut rng, n);
            let e = eigen_hermitian(&a).unwrap();
            for (k, lam) in e.values.iter().enumerate() {
                let v = &e.vectors[k];
                let av = a.mul_vec(v);
                for i in 0..n {
                    let resid = (av[i] - lam * v[i]).norm();
                    assert!(resid < 1e-10, "residual {resid} at n={n} k={k}");
                }
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
            }
            // reconstruction
            let mut rec = HermitianMatrix::zeros(n);
            for (k, lam) in e.values.iter().enumerate() {
                let vv = HermitianMatrix::outer(&e.vectors[k]);
                rec.add_scaled(&vv, *lam);
            }
            rec.add_scaled(&a, -1.0);
            assert!(rec.max_abs() < 1e-10);
        }
    }

    #[test]
    fn eigen_known_complex_pair() {
        // [[0, j], [-j, 0]] has eigenpair (+1, [1, -j]/sqrt(2)) and (-1, ...)
        let mut a = HermitianMatrix::zeros(2);
        a.set_pair(0, 1, Complex64::new(0.0, 1.0));
        let e = eigen_hermitian(&a).unwrap();
        assert_abs_diff_eq!(e.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], -1.0, epsilon = 1e-14);
        // eigenvector defined up to a global phase: check ratio v1/v0 = -j
        let v = &e.vectors[0];
        let ratio = v[1] / v[0];
        assert!((ratio - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn embedding_round_trip_and_trace_doubling() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_hermitian(&mut rng, 4);
        let e = a.embed_real();
        assert_abs_diff_eq!(e.trace(), 2.0 * a.trace(), epsilon = 1e-12);
        let back = HermitianMatrix::unembed_real(&e);
        let mut diff = back.clone();
        diff.add_scaled(&a, -1.0);
        assert!(diff.max_abs() < 1e-15);
        // embedded eigenvalues are the original ones, doubled in multiplicity
        let ea = eigen_hermitian(&a).unwrap();
        let ee = eigen_hermitian(&e).unwrap();
        for (k, lam) in ea.values.iter().enumerate() {
            assert_abs_diff_eq!(ee.values[2 * k], *lam, epsilon = 1e-9);
            assert_abs_diff_eq!(ee.values[2 * k + 1], *lam, epsilon = 1e-9);
        }
    }

    #[test]
    fn rank_of_constructed_matrices() {
        let mut m = RealMatrix::zeros(3, 4);
        // two independent rows, third a linear combination
        for (j, v) in [1.0, 2.0, 0.0, -1.0].iter().enumerate() {
            m.set(0, j, *v);
        }
        for (j, v) in [0.0, 1.0, 1.0, 3.0].iter().enumerate() {
            m.set(1, j, *v);
        }
        for (j, v) in [2.0, 5.0, 1.0, 1.0].iter().enumerate() {
            m.set(2, j, *v); // row0*2 + row1
        }
        assert_eq!(matrix_rank(&m, 1e-10), 2);
        m.set(2, 3, 1.5);
        assert_eq!(matrix_rank(&m, 1e-10), 3);
    }

    #[test]
    fn cholesky_and_lu_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 6;
        // SPD: B B^T + I
        let mut b = RealMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        let mut spd = RealMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = if i == j { 1.0 } else { 0.0 };
                for k in 0..n {
                    s += b.get(i, k) * b.get(j, k);
                }
                spd.set(i, j, s);
            }
        }
        let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let chol = Cholesky::factor(&spd).unwrap();
        let x = chol.solve(&rhs);
        let back = spd.mul_vec(&x);
        for i in 0..n {
            assert_abs_diff_eq!(back[i], rhs[i], epsilon = 1e-10);
        }
        let x2 = lu_solve(&spd, &rhs).unwrap();
        for i in 0..n {
            assert_abs_diff_eq!(x2[i], x[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let mut m = RealMatrix::zeros(2, 2);
        m.set(0, 0, 1.0);
        m.set(1, 1, -1.0);
        assert!(matches!(
            Cholesky::factor(&m),
            Err(LinalgError::SingularFactor { .. })
        ));
    }
}
