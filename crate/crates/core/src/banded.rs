//! Cholesky factorization of symmetric positive-definite banded matrices.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked elsewhere in the graph
use num_traits::Float;

use crate::error::{Error, Result};

/// Lower band storage: `band[i * (w + 1) + d]` holds entry `(i, i − d)`.
pub(crate) struct BandedSpd {
    n: usize,
    w: usize,
    band: Vec<f64>,
}

impl BandedSpd {
    pub(crate) fn zeros(n: usize, half_width: usize) -> Self {
        Self { n, w: half_width, band: vec![0.0; n * (half_width + 1)] }
    }

    /// Adds `v` to entry `(i, j)` (and by symmetry `(j, i)`); entries with
    /// `i < j` are mirrored.
    pub(crate) fn add(&mut self, i: usize, j: usize, v: f64) {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let d = r - c;
        assert!(d <= self.w, "entry outside band");
        self.band[r * (self.w + 1) + d] += v;
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        let d = i - j;
        if d > self.w {
            0.0
        } else {
            self.band[i * (self.w + 1) + d]
        }
    }

    /// In-place Cholesky `A = L Lᵀ`, then solves `A x = b`.
    pub(crate) fn solve(mut self, b: &[f64]) -> Result<Vec<f64>> {
        let (n, w) = (self.n, self.w);
        let stride = w + 1;
        let diag_scale = (0..n).map(|i| self.band[i * stride]).fold(0.0, f64::max);
        for i in 0..n {
            let lo = i.saturating_sub(w);
            for j in lo..=i {
                let mut s = self.get(i, j);
                let klo = lo.max(j.saturating_sub(w));
                for k in klo..j {
                    s -= self.get(i, k) * self.get(j, k);
                }
                if i == j {
                    if s <= diag_scale * 1e-14 {
                        return Err(Error::Singular);
                    }
                    self.band[i * stride] = s.sqrt();
                } else {
                    self.band[i * stride + (i - j)] = s / self.get(j, j);
                }
            }
        }
        let mut y = b.to_vec();
        for i in 0..n {
            for k in i.saturating_sub(w)..i {
                y[i] -= self.get(i, k) * y[k];
            }
            y[i] /= self.get(i, i);
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n.min(i + w + 1) {
                y[i] -= self.get(k, i) * y[k];
            }
            y[i] /= self.get(i, i);
        }
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_laplacian() {
        let n = 6;
        let mut a = BandedSpd::zeros(n, 2);
        for i in 0..n {
            a.add(i, i, 2.0);
            if i + 1 < n {
                a.add(i + 1, i, -1.0);
            }
        }
        // x_i = i+1 gives b = (0,…,0, n+1) shifted at the ends.
        let x: Vec<f64> = (0..n).map(|i| (i + 1) as f64).collect();
        let mut b = vec![0.0; n];
        b[n - 1] = (n + 1) as f64;
        let got = a.solve(&b).unwrap();
        for (g, w) in got.iter().zip(x) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn indefinite_is_rejected() {
        let mut a = BandedSpd::zeros(2, 1);
        a.add(0, 0, 1.0);
        a.add(1, 1, 1.0);
        a.add(0, 1, 2.0);
        assert!(a.solve(&[1.0, 1.0]).is_err());
    }
}
