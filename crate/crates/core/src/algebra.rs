//! Matrix Lie algebras su(k) and sl(k,C), the invariant pairing and su(2)
//! triples.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked elsewhere in the graph
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, I, ZERO};

/// Relative tolerance of the membership test.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Traceless skew-Hermitian matrices.
    Su,
    /// Traceless complex matrices.
    SlComplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub family: Family,
    pub dim: usize,
}

impl AlgebraSpec {
    pub fn new(family: Family, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument("algebra dimension must be at least 2"));
        }
        Ok(Self { family, dim })
    }

    pub fn su(dim: usize) -> Self {
        assert!(dim >= 2, "su(k) needs k >= 2");
        Self { family: Family::Su, dim }
    }

    pub fn sl(dim: usize) -> Self {
        assert!(dim >= 2, "sl(k) needs k >= 2");
        Self { family: Family::SlComplex, dim }
    }

    /// Distance-like defect from the algebra: trace magnitude plus, for su,
    /// the Hermitian part.
    pub fn defect(&self, x: &ComplexMatrix) -> f64 {
        let tr = x.trace().norm();
        match self.family {
            Family::Su => tr + x.hermitian_part().frobenius_norm(),
            Family::SlComplex => tr,
        }
    }

    pub fn contains(&self, x: &ComplexMatrix) -> bool {
        x.dim() == self.dim && x.is_finite() && self.defect(x) <= MEMBERSHIP_TOL * x.frobenius_norm()
    }

    /// Membership test with a typed error.
    pub fn check(&self, x: &ComplexMatrix) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInAlgebra { defect: self.defect(x) })
        }
    }

    /// Nearest element of the algebra in the Frobenius norm.
    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        match self.family {
            Family::Su => x.skew_hermitian_part().traceless_part(),
            Family::SlComplex => x.traceless_part(),
        }
    }

    /// Real dimension of the algebra.
    pub fn real_dim(&self) -> usize {
        let d = self.dim * self.dim - 1;
        match self.family {
            Family::Su => d,
            Family::SlComplex => 2 * d,
        }
    }

    /// Real-linear basis. For su(k) it is orthonormal for [`pairing`]; for
    /// sl(k,C) it is the su(k) basis followed by `i` times it.
    pub fn basis(&self) -> Vec<ComplexMatrix> {
        let su = su_basis(self.dim);
        match self.family {
            Family::Su => su,
            Family::SlComplex => {
                let imag: Vec<_> = su.iter().map(|b| b.scale(I)).collect();
                su.into_iter().chain(imag).collect()
            }
        }
    }

    /// Coordinates in [`AlgebraSpec::basis`].
    pub fn coordinates(&self, x: &ComplexMatrix) -> Vec<f64> {
        let su = su_basis(self.dim);
        match self.family {
            Family::Su => su.iter().map(|b| pairing(b, x)).collect(),
            Family::SlComplex => {
                // x = A + iB with A, B in su(k).
                let a = x.skew_hermitian_part();
                let b = x.hermitian_part().scale(-I);
                let mut c: Vec<f64> = su.iter().map(|e| pairing(e, &a)).collect();
                c.extend(su.iter().map(|e| pairing(e, &b)));
                c
            }
        }
    }

    pub fn from_coordinates(&self, coords: &[f64]) -> Result<ComplexMatrix> {
        let basis = self.basis();
        if coords.len() != basis.len() {
            return Err(Error::LengthMismatch { expected: basis.len(), found: coords.len() });
        }
        let mut x = ComplexMatrix::zeros(self.dim);
        for (b, &c) in basis.iter().zip(coords) {
            x.axpy(C64::new(c, 0.0), b);
        }
        Ok(x)
    }
}

/// Orthonormal basis of su(k) for `−Re tr(XY)`.
fn su_basis(k: usize) -> Vec<ComplexMatrix> {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(k * k - 1);
    for p in 0..k {
        for q in (p + 1)..k {
            let mut a = ComplexMatrix::zeros(k);
            a[(p, q)] = C64::new(r, 0.0);
            a[(q, p)] = C64::new(-r, 0.0);
            out.push(a);
            let mut s = ComplexMatrix::zeros(k);
            s[(p, q)] = C64::new(0.0, r);
            s[(q, p)] = C64::new(0.0, r);
            out.push(s);
        }
    }
    for l in 1..k {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut d = ComplexMatrix::zeros(k);
        for i in 0..l {
            d[(i, i)] = C64::new(0.0, norm);
        }
        d[(l, l)] = C64::new(0.0, -(l as f64) * norm);
        out.push(d);
    }
    out
}

/// Lie bracket `XY − YX`.
pub fn bracket(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    Ok(x.commutator(y))
}

/// Invariant pairing `−Re tr(XY)`; positive definite on su(k).
pub fn pairing(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    complex_pairing(x, y).re
}

/// Complex-bilinear extension `−tr(XY)`.
pub fn complex_pairing(x: &ComplexMatrix, y: &ComplexMatrix) -> C64 {
    assert_eq!(x.dim(), y.dim(), "pairing: dimension mismatch");
    let n = x.dim();
    let (a, b) = (x.as_slice(), y.as_slice());
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[i * n + j] * b[j * n + i];
        }
    }
    -acc
}

/// Images of the standard su(2) basis under a homomorphism into su(k).
///
/// The standard basis is `e_j = (i/2)σ_j` with Pauli matrices `σ_j`, so that
/// `[e1,e2] = −e3` and cyclically.
#[derive(Clone, Debug, PartialEq)]
pub struct Su2Triple {
    pub e1: ComplexMatrix,
    pub e2: ComplexMatrix,
    pub e3: ComplexMatrix,
}

impl Su2Triple {
    pub fn standard() -> Self {
        Self::irreducible(2)
    }

    /// The irreducible representation of dimension `k` (spin `(k−1)/2`),
    /// built from angular momentum matrices as `σ(e_j) = i·J_j`.
    pub fn irreducible(k: usize) -> Self {
        assert!(k >= 1, "representation dimension must be positive");
        let j = (k as f64 - 1.0) / 2.0;
        let mut jz = ComplexMatrix::zeros(k);
        let mut jp = ComplexMatrix::zeros(k);
        for i in 0..k {
            let m = j - i as f64;
            jz[(i, i)] = C64::new(m, 0.0);
            if i + 1 < k {
                let m1 = m - 1.0;
                jp[(i, i + 1)] = C64::new((j * (j + 1.0) - m1 * (m1 + 1.0)).sqrt(), 0.0);
            }
        }
        let jm = jp.adjoint();
        let jx = (&jp + &jm).scale_re(0.5);
        let jy = (&jp - &jm).scale(C64::new(0.0, -0.5));
        Self { e1: jx.scale(I), e2: jy.scale(I), e3: jz.scale(I) }
    }

    /// Irreducible block of dimension `irreducible` followed by a trivial
    /// summand, padded to size `k`.
    pub fn with_trivial(k: usize, irreducible: usize) -> Result<Self> {
        if irreducible == 0 || irreducible > k {
            return Err(Error::InvalidArgument("irreducible block must fit inside k"));
        }
        let small = Self::irreducible(irreducible);
        let pad = |m: &ComplexMatrix| {
            ComplexMatrix::from_fn(k, |r, c| if r < irreducible && c < irreducible { m[(r, c)] } else { ZERO })
        };
        Ok(Self { e1: pad(&small.e1), e2: pad(&small.e2), e3: pad(&small.e3) })
    }

    pub fn zero(k: usize) -> Self {
        Self { e1: ComplexMatrix::zeros(k), e2: ComplexMatrix::zeros(k), e3: ComplexMatrix::zeros(k) }
    }

    pub fn dim(&self) -> usize {
        self.e1.dim()
    }

    pub fn as_array(&self) -> [&ComplexMatrix; 3] {
        [&self.e1, &self.e2, &self.e3]
    }

    /// Largest deviation from `[e1,e2] = −e3` and its cyclic versions.
    pub fn relation_defect(&self) -> f64 {
        let [a, b, c] = self.as_array();
        let d1 = (&a.commutator(b) + c).frobenius_norm();
        let d2 = (&b.commutator(c) + a).frobenius_norm();
        let d3 = (&c.commutator(a) + b).frobenius_norm();
        d1.max(d2).max(d3)
    }
}

/// Irreducible su(2) embedding into su(k).
pub fn su2_embed(spec: &AlgebraSpec) -> Result<Su2Triple> {
    if spec.family != Family::Su {
        return Err(Error::InvalidArgument("su(2) embeddings are only provided into su(k)"));
    }
    Ok(Su2Triple::irreducible(spec.dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn standard_triple_relations() {
        let t = Su2Triple::standard();
        let e3 = ComplexMatrix::diag(&[c(0.0, 0.5), c(0.0, -0.5)]);
        assert!(t.e3.max_abs_diff(&e3) < 1e-16);
        let b = bracket(&t.e1, &t.e2).unwrap();
        assert!(b.max_abs_diff(&(-&t.e3)) < 1e-15);
        let b = bracket(&t.e3.scale_re(2.0), &t.e1).unwrap();
        let expect = ComplexMatrix::from_rows([[(0.0, 0.0), (-1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]]);
        assert!(b.max_abs_diff(&expect) < 1e-15);
        assert!(t.relation_defect() < 1e-15);
    }

    #[test]
    fn pairing_values() {
        let t = Su2Triple::standard();
        assert!((pairing(&t.e1, &t.e1) - 0.5).abs() < 1e-16);
        assert!(pairing(&t.e1, &t.e2).abs() < 1e-16);
        let lhs = pairing(&t.e3.commutator(&t.e1), &t.e2) + pairing(&t.e1, &t.e3.commutator(&t.e2));
        assert!(lhs.abs() < 1e-16);
    }

    #[test]
    fn irreducible_embeddings() {
        for k in 2..=6 {
            let t = su2_embed(&AlgebraSpec::su(k)).unwrap();
            assert!(t.relation_defect() < 1e-12, "k = {k}");
            for m in t.as_array() {
                assert!(AlgebraSpec::su(k).contains(m));
            }
        }
        let t3 = Su2Triple::irreducible(3);
        assert!((pairing(&t3.e3, &t3.e3) - 2.0).abs() < 1e-14);
        assert!(su2_embed(&AlgebraSpec::sl(2)).is_err());
    }

    #[test]
    fn trivial_summand_embedding() {
        let t = Su2Triple::with_trivial(3, 2).unwrap();
        assert!(t.relation_defect() < 1e-15);
        assert_eq!(t.e1[(2, 2)], ZERO);
        assert!(Su2Triple::with_trivial(2, 3).is_err());
    }

    #[test]
    fn su_basis_is_orthonormal() {
        for k in 2..=4 {
            let spec = AlgebraSpec::su(k);
            let b = spec.basis();
            assert_eq!(b.len(), k * k - 1);
            for (i, x) in b.iter().enumerate() {
                assert!(spec.contains(x));
                for (j, y) in b.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((pairing(x, y) - expect).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let spec = AlgebraSpec::sl(3);
        let x = ComplexMatrix::from_fn(3, |i, j| c(i as f64 - j as f64 * 0.5, (i * j) as f64 * 0.3));
        let x = spec.project(&x);
        let back = spec.from_coordinates(&spec.coordinates(&x)).unwrap();
        assert!(back.max_abs_diff(&x) < 1e-14);
    }

    #[test]
    fn membership() {
        let su2 = AlgebraSpec::su(2);
        assert!(su2.contains(&Su2Triple::standard().e1));
        assert!(!su2.contains(&ComplexMatrix::identity(2)));
        assert!(su2.contains(&ComplexMatrix::zeros(2)));
        assert!(matches!(su2.check(&ComplexMatrix::identity(3)), Err(Error::DimensionMismatch { .. })));
        let h = ComplexMatrix::from_rows([[(1.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (-1.0, 0.0)]]);
        assert!(AlgebraSpec::sl(2).contains(&h));
        assert!(!su2.contains(&h));
        assert!(bracket(&h, &ComplexMatrix::zeros(3)).is_err());
    }
}
