//! Dense square complex matrices.
//!
//! Sizes in this crate are tiny (k ≤ 6 in practice), so everything is a
//! straightforward row-major `Vec` with hand-written kernels: LU with partial
//! pivoting, cyclic Jacobi for Hermitian eigenproblems, scaling-and-squaring
//! Taylor `expm`, and the polar decomposition built on top of Jacobi.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

#[allow(unused_imports)] // inherent when std is linked elsewhere in the graph
use num_traits::Float;

use crate::error::{Error, Result};

pub type C64 = num_complex::Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// A k×k complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::LengthMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from `(re, im)` pairs given row by row.
    ///
    /// Panics if the rows do not form a square.
    pub fn from_rows<const K: usize>(rows: [[(f64, f64); K]; K]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&(re, im)| C64::new(re, im)))
            .collect();
        Self { dim: K, data }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * dim + i] = e;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * c).collect() }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * c).collect() }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: C64, other: &Self) {
        assert_eq!(self.dim, other.dim, "axpy: dimension mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    /// `XY − YX`; panics on dimension mismatch. The fallible form is
    /// [`crate::algebra::bracket`].
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Skew-Hermitian part `(X − X†)/2`.
    pub fn skew_hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] - self[(j, i)].conj()) * 0.5)
    }

    /// Hermitian part `(X + X†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Removes the trace: `X − tr(X)/k · 1`.
    pub fn traceless_part(&self) -> Self {
        let shift = self.trace() / self.dim as f64;
        let mut m = self.clone();
        for i in 0..self.dim {
            m.data[i * self.dim + i] -= shift;
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn lu(&self) -> Result<(Vec<C64>, Vec<usize>, bool)> {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        let scale = self.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::Singular);
        }
        for col in 0..n {
            let (piv, best) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= scale * 1e-14 {
                return Err(Error::Singular);
            }
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                perm.swap(piv, col);
                odd = !odd;
            }
            let p = a[col * n + col];
            for r in (col + 1)..n {
                let f = a[r * n + col] / p;
                a[r * n + col] = f;
                for j in (col + 1)..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        Ok((a, perm, odd))
    }

    pub fn determinant(&self) -> C64 {
        match self.lu() {
            Ok((a, _, odd)) => {
                let n = self.dim;
                let d: C64 = (0..n).map(|i| a[i * n + i]).product();
                if odd {
                    -d
                } else {
                    d
                }
            }
            Err(_) => ZERO,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let (a, perm, _) = self.lu()?;
        let mut inv = Self::zeros(n);
        for c in 0..n {
            // Solve for column c of the inverse: L U x = P e_c.
            let mut x: Vec<C64> = (0..n).map(|r| if perm[r] == c { ONE } else { ZERO }).collect();
            for r in 0..n {
                for k in 0..r {
                    let v = x[k];
                    x[r] -= a[r * n + k] * v;
                }
            }
            for r in (0..n).rev() {
                for k in (r + 1)..n {
                    let v = x[k];
                    x[r] -= a[r * n + k] * v;
                }
                x[r] /= a[r * n + r];
            }
            for r in 0..n {
                inv.data[r * n + c] = x[r];
            }
        }
        Ok(inv)
    }

    /// Matrix exponential by scaling and squaring with a Taylor kernel.
    pub fn expm(&self) -> Self {
        let n = self.dim;
        let norm = self.norm_one();
        let mut squarings = 0u32;
        if norm > 0.5 {
            squarings = (norm / 0.5).log2().ceil() as u32;
        }
        let scaled = self.scale_re(0.5f64.powi(squarings as i32));
        let mut sum = Self::identity(n);
        let mut term = Self::identity(n);
        for m in 1..40 {
            term = (&term * &scaled).scale_re(1.0 / m as f64);
            sum += &term;
            if term.norm_one() <= 1e-18 * sum.norm_one() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns ascending real eigenvalues and a unitary matrix whose columns
    /// are the eigenvectors. Only the Hermitian part of `self` is used.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, Self) {
        let n = self.dim;
        let mut a = self.hermitian_part();
        let mut v = Self::identity(n);
        let total = a.frobenius_norm();
        for _sweep in 0..64 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= 1e-17 * total || off == 0.0 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let r = apq.norm();
                    if r <= 1e-300 {
                        continue;
                    }
                    let phase = apq / r;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let theta = (aqq - app) / (2.0 * r);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    // G = diag(1, conj(phase)) on (p,q) followed by the real rotation.
                    let g_pp = C64::new(c, 0.0);
                    let g_pq = C64::new(s, 0.0);
                    let g_qp = phase.conj() * (-s);
                    let g_qq = phase.conj() * c;
                    // A <- A G (columns p, q)
                    for i in 0..n {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = aip * g_pp + aiq * g_qp;
                        a[(i, q)] = aip * g_pq + aiq * g_qq;
                    }
                    // A <- G† A (rows p, q)
                    for j in 0..n {
                        let apj = a[(p, j)];
                        let aqj = a[(q, j)];
                        a[(p, j)] = g_pp.conj() * apj + g_qp.conj() * aqj;
                        a[(q, j)] = g_pq.conj() * apj + g_qq.conj() * aqj;
                    }
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * g_pp + viq * g_qp;
                        v[(i, q)] = vip * g_pq + viq * g_qq;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| a[(x, x)].re.partial_cmp(&a[(y, y)].re).unwrap_or(core::cmp::Ordering::Equal));
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let vectors = Self::from_fn(n, |i, j| v[(i, order[j])]);
        (values, vectors)
    }

    /// Applies `f` to the spectrum of a Hermitian matrix.
    pub fn hermitian_function(&self, f: impl Fn(f64) -> C64) -> Self {
        let (vals, vecs) = self.hermitian_eigen();
        let d = Self::diag(&vals.iter().map(|&x| f(x)).collect::<Vec<_>>());
        &(&vecs * &d) * &vecs.adjoint()
    }

    /// Right polar decomposition `A = U · exp(iH)`.
    ///
    /// `U` is unitary and `exp(iH)` is the positive-definite factor
    /// `(A†A)^{1/2}`, so `H` is skew-Hermitian (`iH` is Hermitian).
    pub fn polar_decompose(&self) -> Result<(Self, Self)> {
        let gram = &self.adjoint() * self;
        let (vals, vecs) = gram.hermitian_eigen();
        let top = vals.last().copied().unwrap_or(0.0);
        if vals.first().is_none_or(|&v| v <= top * 1e-26 || v <= 0.0) {
            return Err(Error::Singular);
        }
        let inv_sqrt = Self::diag(&vals.iter().map(|&l| C64::new(1.0 / l.sqrt(), 0.0)).collect::<Vec<_>>());
        let log_half = Self::diag(&vals.iter().map(|&l| -I * (0.5 * l.ln())).collect::<Vec<_>>());
        let vh = vecs.adjoint();
        let u = &(self * &(&vecs * &inv_sqrt)) * &vh;
        let h = &(&vecs * &log_half) * &vh;
        Ok((u, h))
    }

    /// Nearest unitary matrix, by Newton iteration `X ← (X + X^{-†})/2`.
    ///
    /// Intended for matrices already close to unitary (drift correction).
    pub fn unitary_projection(&self) -> Result<Self> {
        let n = self.dim;
        let mut x = self.clone();
        for _ in 0..8 {
            let defect = (&(&x.adjoint() * &x) - &Self::identity(n)).frobenius_norm();
            if defect <= 1e-15 {
                break;
            }
            let inv_adj = x.inverse()?.adjoint();
            x = (&x + &inv_adj).scale_re(0.5);
        }
        Ok(x)
    }

    /// Coefficients of `det(η·1 − X)` in descending powers of η.
    ///
    /// Entry `j` multiplies `η^{k−j}`; entry 0 is always 1.
    pub fn charpoly(&self) -> Vec<C64> {
        // Faddeev–LeVerrier.
        let n = self.dim;
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[0] = ONE;
        let mut m = Self::zeros(n);
        for j in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next.data[i * n + i] += coeffs[j - 1];
            }
            m = next;
            coeffs[j] = -(self * &m).trace() / j as f64;
        }
        coeffs
    }

    /// Eigenvalues as the roots of the characteristic polynomial.
    pub fn eigenvalues(&self) -> Vec<C64> {
        crate::poly::roots(&self.charpoly())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "mul: dimension mismatch");
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

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| -z).collect() }
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        -&self
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim, "add_assign: dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim, "sub_assign: dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

/// Rank of a set of complex row vectors, by Gaussian elimination with
/// complete pivoting. Pivots below `rel_tol` times the largest entry count
/// as zero.
pub fn complex_rank(rows: &[Vec<C64>], rel_tol: f64) -> usize {
    let mut a: Vec<Vec<C64>> = rows.to_vec();
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    let mut cols: Vec<usize> = (0..n).collect();
    for r in 0..m.min(n) {
        let mut best = (r, r, 0.0);
        for i in r..m {
            for (jj, &j) in cols.iter().enumerate().skip(r) {
                let v = a[i][j].norm();
                if v > best.2 {
                    best = (i, jj, v);
                }
            }
        }
        if best.2 <= rel_tol * scale {
            break;
        }
        a.swap(r, best.0);
        cols.swap(r, best.1);
        let pc = cols[r];
        let p = a[r][pc];
        for i in (r + 1)..m {
            let f = a[i][pc] / p;
            if f == ZERO {
                continue;
            }
            for &j in &cols {
                let v = a[r][j];
                a[i][j] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves a dense real linear system by Gaussian elimination with partial
/// pivoting. `a` is row-major `n×n`.
pub fn solve_real(mut a: Vec<f64>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    if a.len() != n * n {
        return Err(Error::LengthMismatch { expected: n * n, found: a.len() });
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Err(Error::Singular);
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x * n + col].abs().partial_cmp(&a[y * n + col].abs()).unwrap_or(core::cmp::Ordering::Equal))
            .unwrap_or(col);
        if a[piv * n + col].abs() <= scale * 1e-300 {
            return Err(Error::Singular);
        }
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            b.swap(piv, col);
        }
        let p = a[col * n + col];
        for r in (col + 1)..n {
            let f = a[r * n + col] / p;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                a[r * n + j] -= f * a[col * n + j];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for j in (r + 1)..n {
            s -= a[r * n + j] * x[j];
        }
        x[r] = s / a[r * n + r];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample(dim: usize, seed: u64) -> ComplexMatrix {
        // Small deterministic LCG; matrix tests only need variety, not quality.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        ComplexMatrix::from_fn(dim, |_, _| c(next(), next()))
    }

    #[test]
    fn expm_of_zero_is_identity() {
        assert_eq!(ComplexMatrix::zeros(3).expm(), ComplexMatrix::identity(3));
    }

    #[test]
    fn expm_diagonal_cases() {
        let e3 = ComplexMatrix::diag(&[c(0.0, 0.5), c(0.0, -0.5)]);
        let m = e3.scale_re(2.0 * PI).expm();
        assert!(m.max_abs_diff(&ComplexMatrix::identity(2).scale_re(-1.0)) < 1e-13);

        let d = ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]).expm();
        assert!((d[(0, 0)].re - E).abs() < 1e-14 * E);
        assert!((d[(1, 1)].re - 1.0 / E).abs() < 1e-15);
    }

    #[test]
    fn expm_inverse_pair_for_large_norm() {
        for seed in 0..5 {
            let x = sample(4, seed).scale_re(2.5);
            assert!(x.norm_one() <= 40.0);
            let p = &x.expm() * &(-&x).expm();
            assert!(p.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn expm_matches_diagonalized_hermitian() {
        let a = sample(3, 7);
        let h = a.hermitian_part().scale_re(3.0);
        let direct = h.expm();
        let spectral = h.hermitian_function(|x| c(x.exp(), 0.0));
        let rel = direct.max_abs_diff(&spectral) / spectral.frobenius_norm();
        assert!(rel < 1e-12, "rel {rel}");
    }

    #[test]
    fn inverse_and_determinant() {
        let a = sample(4, 3);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        let d = ComplexMatrix::diag(&[c(2.0, 0.0), c(0.0, 3.0)]);
        assert!((d.determinant() - c(0.0, 6.0)).norm() < 1e-15);
        assert_eq!(ComplexMatrix::zeros(2).inverse(), Err(Error::Singular));
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        for seed in 0..6 {
            let h = sample(5, seed).hermitian_part();
            let (vals, vecs) = h.hermitian_eigen();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            let d = ComplexMatrix::diag(&vals.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>());
            let back = &(&vecs * &d) * &vecs.adjoint();
            assert!(back.max_abs_diff(&h) < 1e-13, "seed {seed}");
            let unit = &vecs.adjoint() * &vecs;
            assert!(unit.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-13);
        }
    }

    #[test]
    fn polar_of_unitary_and_positive_diagonal() {
        let u = sample(3, 11).skew_hermitian_part().expm();
        let (uu, h) = u.polar_decompose().unwrap();
        assert!(uu.max_abs_diff(&u) < 1e-12);
        assert!(h.frobenius_norm() < 1e-12);

        let a = ComplexMatrix::diag(&[c(E, 0.0), c(E * E, 0.0)]);
        let (uu, h) = a.polar_decompose().unwrap();
        assert!(uu.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
        let expect = ComplexMatrix::diag(&[c(0.0, -1.0), c(0.0, -2.0)]);
        assert!(h.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn polar_reconstruction() {
        for seed in 0..8 {
            let a = sample(4, 100 + seed);
            let (u, h) = a.polar_decompose().unwrap();
            let back = &u * &h.scale(I).expm();
            assert!(back.max_abs_diff(&a) < 1e-10, "seed {seed}");
            assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
            assert!((&h + &h.adjoint()).frobenius_norm() < 1e-12);
        }
        assert_eq!(ComplexMatrix::zeros(2).polar_decompose(), Err(Error::Singular));
    }

    #[test]
    fn charpoly_of_companion_like_matrix() {
        // diag(1, 2, 3): (η−1)(η−2)(η−3) = η³ − 6η² + 11η − 6
        let d = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let p = d.charpoly();
        let expect = [1.0, -6.0, 11.0, -6.0];
        for (a, b) in p.iter().zip(expect) {
            assert!((a - c(b, 0.0)).norm() < 1e-13);
        }
        // Brute-force check: det(η − A) at a sample η.
        let a = sample(4, 5);
        let eta = c(0.3, -1.2);
        let direct = (&ComplexMatrix::identity(4).scale(eta) - &a).determinant();
        let p = a.charpoly();
        let via: C64 = p.iter().fold(ZERO, |acc, &co| acc * eta + co);
        assert!((direct - via).norm() < 1e-12 * direct.norm().max(1.0));
    }

    #[test]
    fn rank_counts_independent_rows() {
        let rows = vec![
            vec![c(1.0, 0.0), c(0.0, 1.0), ZERO],
            vec![c(2.0, 0.0), c(0.0, 2.0), ZERO],
            vec![ZERO, ZERO, c(1.0, 1.0)],
        ];
        assert_eq!(complex_rank(&rows, 1e-12), 2);
        assert_eq!(complex_rank(&[vec![ZERO, ZERO]], 1e-12), 0);
    }

    #[test]
    fn unitary_projection_fixes_drift() {
        let u = sample(3, 21).skew_hermitian_part().expm();
        let mut noisy = u.clone();
        noisy[(0, 1)] += c(1e-7, -2e-7);
        let p = noisy.unitary_projection().unwrap();
        assert!((&p.adjoint() * &p).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
        assert!(p.max_abs_diff(&u) < 1e-6);
    }

    #[test]
    fn solve_real_small_system() {
        let x = solve_real(vec![2.0, 1.0, 1.0, 3.0], vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
    }
}
