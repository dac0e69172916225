//! Dense complex linear algebra sized for spin-chain work (dimensions up to
//! a few thousand, typically 2^N with N <= 10).
//!
//! Everything is self-contained: row-major [`CMat`] with naive O(n^3)
//! products, LU with partial pivoting, and a complex Schur decomposition
//! (Householder Hessenberg reduction followed by single-shift QR with
//! Wilkinson shifts) from which eigenvalues and left/right eigenvectors of
//! nonsymmetric complex matrices are extracted.

use crate::{C64, Error, Result};
use alloc::vec;
use alloc::vec::Vec;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        CMat::from_fn(r, c, |i, j| rows[i][j])
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

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let lhs = k * other.cols;
                let dst = i * other.cols;
                for j in 0..other.cols {
                    out.data[dst + j] += a * other.data[lhs + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = ZERO;
                for j in 0..self.cols {
                    s += self[(i, j)] * v[j];
                }
                s
            })
            .collect()
    }

    /// Row covector times matrix.
    pub fn vec_mul(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| {
                let mut s = ZERO;
                for i in 0..self.rows {
                    s += v[i] * self[(i, j)];
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += *y;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x -= *y;
        }
        out
    }

    pub fn scale(&self, s: C64) -> CMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= s;
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Kronecker product; `other` indexes the fast (inner) factor.
    pub fn kron(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &CMat) -> CMat {
        self.mul(other).sub(&other.mul(self))
    }

    /// Max |A_ij - s delta_ij| over the matrix, i.e. distance to s * I.
    pub fn dist_to_scalar(&self, s: C64) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { s } else { ZERO };
                let d = (self[(i, j)] - want).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn lu(&self) -> Result<Lu> {
        Lu::new(self)
    }

    pub fn inverse(&self) -> Result<CMat> {
        self.lu()?.solve_mat(&CMat::identity(self.rows))
    }

    pub fn det(&self) -> C64 {
        match self.lu() {
            Ok(lu) => lu.det(),
            Err(_) => ZERO,
        }
    }

    /// Singular values in descending order, via the Hermitian eigenproblem
    /// of A^H A solved with cyclic Jacobi rotations.
    pub fn singular_values(&self) -> Vec<f64> {
        let gram = self.adjoint().mul(self);
        let mut ev = hermitian_eigenvalues(&gram);
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev.into_iter().map(|x| libm::sqrt(x.max(0.0))).collect()
    }

    /// Numerical rank at relative threshold `rel_tol * sigma_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let sv = self.singular_values();
        match sv.first() {
            None => 0,
            Some(&s0) if s0 == 0.0 => 0,
            Some(&s0) => sv.iter().filter(|&&s| s > rel_tol * s0).count(),
        }
    }

    pub fn condition_number(&self) -> f64 {
        let sv = self.singular_values();
        match (sv.first(), sv.last()) {
            (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
            _ => f64::INFINITY,
        }
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

// ---------------------------------------------------------------------------
// Scalar 2x2 matrices (auxiliary-space coefficients, K-matrices, gauge frames)
// ---------------------------------------------------------------------------

/// 2x2 complex matrix stored as [[row0], [row1]].
pub type M2 = [[C64; 2]; 2];
/// 2-component column vector.
pub type V2 = [C64; 2];

pub fn m2_id() -> M2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn m2_mul(a: &M2, b: &M2) -> M2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

pub fn m2_scale(a: &M2, s: C64) -> M2 {
    [[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]]
}

pub fn m2_sub(a: &M2, b: &M2) -> M2 {
    [[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]]
}

pub fn m2_transpose(a: &M2) -> M2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

pub fn m2_norm(a: &M2) -> f64 {
    libm::sqrt(
        a[0][0].norm_sqr() + a[0][1].norm_sqr() + a[1][0].norm_sqr() + a[1][1].norm_sqr(),
    )
}

pub fn m2_rel_diff(a: &M2, b: &M2) -> f64 {
    let scale = m2_norm(a).max(m2_norm(b));
    if scale < 1e-300 {
        return 0.0;
    }
    m2_norm(&m2_sub(a, b)) / scale
}

pub fn m2_to_cmat(a: &M2) -> CMat {
    CMat::from_fn(2, 2, |i, j| a[i][j])
}

/// Row covector times 2x2 matrix times column vector.
pub fn row_m2_col(r: &V2, m: &M2, c: &V2) -> C64 {
    r[0] * (m[0][0] * c[0] + m[0][1] * c[1]) + r[1] * (m[1][0] * c[0] + m[1][1] * c[1])
}

pub fn row_col(r: &V2, c: &V2) -> C64 {
    r[0] * c[0] + r[1] * c[1]
}

/// Outer product column x row.
pub fn col_row(c: &V2, r: &V2) -> M2 {
    [[c[0] * r[0], c[0] * r[1]], [c[1] * r[0], c[1] * r[1]]]
}

/// Relative residual ||A - B||_F / max(||A||_F, ||B||_F), with an absolute
/// fallback when both sides are tiny.
pub fn rel_diff(a: &CMat, b: &CMat) -> f64 {
    let scale = a.norm_fro().max(b.norm_fro());
    if scale < 1e-300 {
        return 0.0;
    }
    a.sub(b).norm_fro() / scale
}

pub fn vec_norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

pub fn vec_sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(v: &[C64], s: C64) -> Vec<C64> {
    v.iter().map(|x| x * s).collect()
}

/// Plain dot product (no conjugation): sum_i a_i b_i.
pub fn vec_dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rel_diff_vec(a: &[C64], b: &[C64]) -> f64 {
    let scale = vec_norm(a).max(vec_norm(b));
    if scale < 1e-300 {
        return 0.0;
    }
    vec_norm(&vec_sub(a, b)) / scale
}

// ---------------------------------------------------------------------------
// LU decomposition with partial pivoting
// ---------------------------------------------------------------------------

pub struct Lu {
    lu: CMat,
    piv: Vec<usize>,
    parity: f64,
}

impl Lu {
    fn new(a: &CMat) -> Result<Self> {
        assert!(a.is_square(), "LU needs a square matrix");
        let n = a.rows();
        let mut lu = a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut parity = 1.0;
        for k in 0..n {
            let (mut imax, mut vmax) = (k, lu[(k, k)].norm());
            for i in k + 1..n {
                let v = lu[(i, k)].norm();
                if v > vmax {
                    imax = i;
                    vmax = v;
                }
            }
            if vmax == 0.0 {
                return Err(Error::Linalg("singular matrix in LU"));
            }
            if imax != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(imax, j)];
                    lu[(imax, j)] = tmp;
                }
                piv.swap(k, imax);
                parity = -parity;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let s = f * lu[(k, j)];
                    lu[(i, j)] -= s;
                }
            }
        }
        Ok(Lu { lu, piv, parity })
    }

    pub fn det(&self) -> C64 {
        let n = self.lu.rows();
        let mut d = C64::new(self.parity, 0.0);
        for i in 0..n {
            d *= self.lu[(i, i)];
        }
        d
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.rows();
        let mut x: Vec<C64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                let s = self.lu[(i, j)] * x[j];
                x[i] -= s;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let s = self.lu[(i, j)] * x[j];
                x[i] -= s;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn solve_mat(&self, b: &CMat) -> Result<CMat> {
        let n = self.lu.rows();
        let mut out = CMat::zeros(n, b.cols());
        for j in 0..b.cols() {
            let col: Vec<C64> = (0..n).map(|i| b[(i, j)]).collect();
            let x = self.solve_vec(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        Ok(out)
    }
}

/// Determinant by LU, returning 0 for numerically singular input.
pub fn det(a: &CMat) -> C64 {
    a.det()
}

// ---------------------------------------------------------------------------
// Hermitian eigenvalues via cyclic Jacobi (used for singular values)
// ---------------------------------------------------------------------------

fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    let n = a.rows();
    let mut m = a.clone();
    for _sweep in 0..60 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[(i, j)].norm_sqr();
            }
        }
        let scale: f64 = (0..n).map(|i| m[(i, i)].norm_sqr()).sum::<f64>().max(1e-300);
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.norm() == 0.0 {
                    continue;
                }
                // Unitary 2x2 diagonalization of the Hermitian block
                // [app, apq; conj(apq), aqq].
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let abs = apq.norm();
                let phase = apq / abs;
                let tau = (aqq - app) / (2.0 * abs);
                let t = {
                    let s = if tau >= 0.0 { 1.0 } else { -1.0 };
                    s / (tau.abs() + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                // Column rotation: [cp, cq] <- [c*cp - conj(u)*s*cq, u*s*cp + c*cq]
                let u = phase;
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = mip * c - miq * u.conj() * s;
                    m[(i, q)] = mip * u * s + miq * c;
                }
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = mpj * c - mqj * u * s;
                    m[(q, j)] = mpj * u.conj() * s + mqj * c;
                }
            }
        }
    }
    (0..n).map(|i| m[(i, i)].re).collect()
}

// ---------------------------------------------------------------------------
// Complex Schur decomposition and eigenvectors
// ---------------------------------------------------------------------------

/// Full eigendecomposition of a dense complex matrix.
///
/// `values[k]` pairs with the right eigenvector `right.col(k)` and the left
/// eigenvector `left.row(k)`; rows of `left` are the inverse of `right`, so
/// `left.row(i) . right.col(j) = delta_ij` for simple spectra.
pub struct Eigen {
    pub values: Vec<C64>,
    pub right: CMat,
    pub left: CMat,
}

impl Eigen {
    /// Smallest gap between distinct eigenvalues.
    pub fn min_gap(&self) -> f64 {
        let n = self.values.len();
        let mut gap = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                gap = gap.min((self.values[i] - self.values[j]).norm());
            }
        }
        gap
    }
}

/// Reduce to upper Hessenberg form by Householder reflections; returns (H, Q)
/// with A = Q H Q^H.
fn hessenberg(a: &CMat) -> (CMat, CMat) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMat::identity(n);
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let mut x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm < 1e-300 {
            continue;
        }
        let alpha = if x[0].norm() == 0.0 {
            C64::new(-xnorm, 0.0)
        } else {
            -(x[0] / x[0].norm()) * xnorm
        };
        x[0] -= alpha;
        let vnorm = vec_norm(&x);
        if vnorm < 1e-300 {
            continue;
        }
        let v: Vec<C64> = x.iter().map(|z| z / vnorm).collect();
        // H <- P H P with P = I - 2 v v^H acting on rows/cols k+1..n.
        for j in 0..n {
            let mut s = ZERO;
            for i in 0..v.len() {
                s += v[i].conj() * h[(k + 1 + i, j)];
            }
            s *= 2.0;
            for i in 0..v.len() {
                let d = v[i] * s;
                h[(k + 1 + i, j)] -= d;
            }
        }
        for i in 0..n {
            let mut s = ZERO;
            for j in 0..v.len() {
                s += h[(i, k + 1 + j)] * v[j];
            }
            s *= 2.0;
            for j in 0..v.len() {
                let d = s * v[j].conj();
                h[(i, k + 1 + j)] -= d;
            }
        }
        for i in 0..n {
            let mut s = ZERO;
            for j in 0..v.len() {
                s += q[(i, k + 1 + j)] * v[j];
            }
            s *= 2.0;
            for j in 0..v.len() {
                let d = s * v[j].conj();
                q[(i, k + 1 + j)] -= d;
            }
        }
    }
    // Clean numerical fuzz below the subdiagonal.
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            h[(i, j)] = ZERO;
        }
    }
    (h, q)
}

/// Complex single-shift QR iteration on a Hessenberg matrix; returns the
/// upper triangular Schur factor while accumulating Q.
///
/// Each step is an explicit shifted QR sweep: factor H - mu I = G_1^H .. G_m^H R
/// with Givens rotations, then form R G_m .. G_1 + mu I.
fn schur_qr(mut h: CMat, mut q: CMat) -> Result<(CMat, CMat)> {
    let n = h.rows();
    if n == 0 {
        return Ok((h, q));
    }
    let mut hi = n - 1; // active block is lo..=hi
    let mut stall = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n + 200;
    let negligible = |h: &CMat, i: usize| -> bool {
        let diag = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
        h[(i, i - 1)].norm() <= f64::EPSILON * diag.max(1e-300)
    };
    while hi > 0 {
        if negligible(&h, hi) {
            h[(hi, hi - 1)] = ZERO;
            hi -= 1;
            stall = 0;
            continue;
        }
        // Find the top of the active unreduced block.
        let mut lo = hi;
        while lo > 0 && !negligible(&h, lo) {
            lo -= 1;
        }
        if lo > 0 {
            h[(lo, lo - 1)] = ZERO;
        }
        total += 1;
        stall += 1;
        if total > max_total {
            return Err(Error::Linalg("QR iteration did not converge"));
        }
        // Wilkinson shift from the trailing 2x2 of the active block.
        let a = h[(hi - 1, hi - 1)];
        let b = h[(hi - 1, hi)];
        let c = h[(hi, hi - 1)];
        let d = h[(hi, hi)];
        let mut shift = {
            let tr = a + d;
            let det = a * d - b * c;
            let disc = (tr * tr - det.scale(4.0)).sqrt();
            let r1 = (tr + disc) * 0.5;
            let r2 = (tr - disc) * 0.5;
            if (r1 - d).norm() <= (r2 - d).norm() {
                r1
            } else {
                r2
            }
        };
        if stall % 12 == 0 {
            // Exceptional shift to break rare cycling.
            shift = d + C64::new(1.5 * c.norm(), 0.5 * b.norm());
        }
        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        // Left rotations zeroing the subdiagonal of the active block.
        let mut rot: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (cg, sg) = givens(h[(k, k)], h[(k + 1, k)]);
            rot.push((cg, sg));
            for j in k..n {
                let top = h[(k, j)];
                let bot = h[(k + 1, j)];
                h[(k, j)] = top * cg + bot * sg;
                h[(k + 1, j)] = bot * cg - top * sg.conj();
            }
            h[(k + 1, k)] = ZERO;
        }
        // Right rotations (G^H) restore Hessenberg form; accumulate Q.
        for (idx, &(cg, sg)) in rot.iter().enumerate() {
            let k = lo + idx;
            for i in 0..=(k + 1).min(n - 1) {
                let left = h[(i, k)];
                let right = h[(i, k + 1)];
                h[(i, k)] = left * cg + right * sg.conj();
                h[(i, k + 1)] = right * cg - left * sg;
            }
            for i in 0..n {
                let left = q[(i, k)];
                let right = q[(i, k + 1)];
                q[(i, k)] = left * cg + right * sg.conj();
                q[(i, k + 1)] = right * cg - left * sg;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    // Zero the strict lower triangle (converged Schur form).
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((h, q))
}

/// Complex Givens rotation: returns (c, s) with c real such that
/// [c, conj(s); -s, c] applied from the left maps (x, y) to (r, 0).
fn givens(x: C64, y: C64) -> (f64, C64) {
    let yn = y.norm();
    if yn == 0.0 {
        return (1.0, ZERO);
    }
    let xn = x.norm();
    let r = libm::hypot(xn, yn);
    if xn == 0.0 {
        // Rotation that swaps; phase chosen to keep c real.
        return (0.0, (y / yn).conj());
    }
    let c = xn / r;
    let s = (x / xn) * y.conj() / r;
    (c, s)
}

/// Eigendecomposition of a general dense complex matrix.
pub fn eigen(a: &CMat) -> Result<Eigen> {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return Ok(Eigen { values: Vec::new(), right: CMat::zeros(0, 0), left: CMat::zeros(0, 0) });
    }
    if n == 1 {
        return Ok(Eigen {
            values: vec![a[(0, 0)]],
            right: CMat::identity(1),
            left: CMat::identity(1),
        });
    }
    let (h, q) = hessenberg(a);
    let (t, q) = schur_qr(h, q)?;
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    // Right eigenvectors of the triangular factor by back substitution.
    let tnorm = t.norm_fro().max(1e-300);
    let mut vt = CMat::zeros(n, n);
    for k in 0..n {
        let lam = values[k];
        let mut y = vec![ZERO; n];
        y[k] = ONE;
        for i in (0..k).rev() {
            let mut s = ZERO;
            for j in i + 1..=k {
                s += t[(i, j)] * y[j];
            }
            let mut den = t[(i, i)] - lam;
            if den.norm() < 1e-14 * tnorm {
                den = C64::new(1e-14 * tnorm, 0.0);
            }
            y[i] = -s / den;
        }
        for i in 0..n {
            vt[(i, k)] = y[i];
        }
    }
    let mut right = q.mul(&vt);
    for k in 0..n {
        let nrm = vec_norm(&right.col(k));
        for i in 0..n {
            right[(i, k)] /= nrm;
        }
    }
    let left = right.inverse().map_err(|_| Error::Linalg("defective eigenbasis"))?;
    Ok(Eigen { values, right, left })
}
