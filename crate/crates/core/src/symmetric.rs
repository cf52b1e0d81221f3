//! Symmetric pairs `g = k ⊕ m`, (g,k)-valued Nahm data and the sl(2)
//! witness of the Kostant–Sekiguchi correspondence.

use alloc::vec::Vec;

use crate::algebra::{AlgebraSpec, Family};
use crate::error::{Error, Result};
use crate::matrix::{complex_rank, ComplexMatrix, C64, I, ONE, ZERO};
use crate::nahm::{integrate_nahm, LaxPair, DEFAULT_BLOWUP_BOUND};
use crate::path::{Grid, NahmData};

/// Involutive automorphism of su(n), extended complex-linearly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// `θ(X) = −Xᵀ`; on su(n) this is complex conjugation, fixing so(n).
    TransposeConjugate,
    /// `θ(X) = JXJ` with `J = diag(1_p, −1_q)`, fixing s(u(p) × u(q)).
    Block { p: usize, q: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricPairSpec {
    pub base: AlgebraSpec,
    pub involution: Involution,
}

impl SymmetricPairSpec {
    pub fn new(base: AlgebraSpec, involution: Involution) -> Result<Self> {
        if base.family != Family::Su {
            return Err(Error::InvalidArgument("symmetric pairs are built on su(n)"));
        }
        if let Involution::Block { p, q } = involution {
            if p == 0 || q == 0 || p + q != base.dim {
                return Err(Error::InvalidArgument("block involution needs p, q ≥ 1 with p + q = n"));
            }
        }
        Ok(Self { base, involution })
    }

    /// su(n)/so(n).
    pub fn orthogonal(n: usize) -> Self {
        Self { base: AlgebraSpec::su(n), involution: Involution::TransposeConjugate }
    }

    /// su(p+q)/s(u(p) × u(q)).
    pub fn block(p: usize, q: usize) -> Result<Self> {
        Self::new(AlgebraSpec::su(p + q), Involution::Block { p, q })
    }

    pub fn theta(&self, x: &ComplexMatrix) -> ComplexMatrix {
        match self.involution {
            Involution::TransposeConjugate => -x.transpose(),
            Involution::Block { p, .. } => ComplexMatrix::from_fn(x.dim(), |r, c| {
                if (r < p) == (c < p) {
                    x[(r, c)]
                } else {
                    -x[(r, c)]
                }
            }),
        }
    }

    /// `(X + θX)/2` and `(X − θX)/2`, for any complex matrix.
    pub fn split_complex(&self, x: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
        let t = self.theta(x);
        ((x + &t).scale_re(0.5), (x - &t).scale_re(0.5))
    }

    /// Splits an element of the base algebra into its k and m parts.
    pub fn split(&self, x: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
        self.base.check(x)?;
        Ok(self.split_complex(x))
    }

    /// Spanning sets of k and m (real, hence also complex spans of the
    /// complexifications), from the k/m parts of the su(n) basis.
    pub fn bases(&self) -> (Vec<ComplexMatrix>, Vec<ComplexMatrix>) {
        let mut k = Vec::new();
        let mut m = Vec::new();
        for b in self.base.basis() {
            let (bk, bm) = self.split_complex(&b);
            if bk.frobenius_norm() > 1e-12 {
                k.push(bk);
            }
            if bm.frobenius_norm() > 1e-12 {
                m.push(bm);
            }
        }
        (k, m)
    }

    /// `‖θ[X,Y] − [θX,θY]‖`.
    pub fn automorphism_defect(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
        let lhs = self.theta(&x.commutator(y));
        let rhs = self.theta(x).commutator(&self.theta(y));
        (&lhs - &rhs).frobenius_norm()
    }

    /// Largest violation of `[k,k] ⊂ k`, `[k,m] ⊂ m`, `[m,m] ⊂ k` and
    /// `θ² = 1` over the bases.
    pub fn closure_defect(&self) -> f64 {
        let (k, m) = self.bases();
        let mut worst = 0.0f64;
        let m_part = |x: &ComplexMatrix| self.split_complex(x).1.frobenius_norm();
        let k_part = |x: &ComplexMatrix| self.split_complex(x).0.frobenius_norm();
        for a in &k {
            worst = worst.max((&self.theta(&self.theta(a)) - a).frobenius_norm());
            for b in &k {
                worst = worst.max(m_part(&a.commutator(b)));
            }
            for b in &m {
                worst = worst.max(k_part(&a.commutator(b)));
            }
        }
        for a in &m {
            for b in &m {
                worst = worst.max(m_part(&a.commutator(b)));
            }
        }
        worst
    }

    /// Distance of `X` from the dual real form `g* = k + i·m`: writing
    /// `X = A + iB` with `A, B` skew-Hermitian, returns `‖A_m‖ + ‖B_k‖`.
    pub fn dual_defect(&self, x: &ComplexMatrix) -> f64 {
        let a = x.skew_hermitian_part();
        let b = x.hermitian_part().scale(-I);
        self.split_complex(&a).1.frobenius_norm() + self.split_complex(&b).0.frobenius_norm()
    }
}

/// Largest leakage of `T0, T1` out of k and of `T2, T3` out of m.
pub fn is_gk_valued(spec: &SymmetricPairSpec, d: &NahmData) -> f64 {
    let c = d.components();
    let mut worst = 0.0f64;
    for i in 0..d.grid().len() {
        for (slot, want_k) in [(0, true), (1, true), (2, false), (3, false)] {
            let (xk, xm) = spec.split_complex(&c[slot].values()[i]);
            let leak = if want_k { xm } else { xk };
            worst = worst.max(leak.frobenius_norm());
        }
    }
    worst
}

/// Integrates from a (g,k)-valued initial triple and reports the largest
/// leakage along the flow.
pub fn flow_preserves_split(spec: &SymmetricPairSpec, init: &[ComplexMatrix; 3], grid: Grid) -> Result<f64> {
    let d = integrate_nahm(spec.base, init, grid, DEFAULT_BLOWUP_BOUND)?;
    Ok(is_gk_valued(spec, &d))
}

/// The Lax pairs `(α1, β1) = (T0 − iT1, T2 + iT3)` and
/// `(α3, β3) = (T0 − iT3, T1 + iT2)`.
pub fn lax_pairs_13(d: &NahmData) -> (LaxPair, LaxPair) {
    let c = d.components();
    let combine = |x: usize, sign: f64, y: usize| -> Vec<ComplexMatrix> {
        c[x].values().iter().zip(c[y].values()).map(|(a, b)| a + &b.scale(I * sign)).collect()
    };
    let grid = *d.grid();
    (
        LaxPair { grid, alpha: combine(0, -1.0, 1), beta: combine(2, 1.0, 3) },
        LaxPair { grid, alpha: combine(0, -1.0, 3), beta: combine(1, 1.0, 2) },
    )
}

/// A nonzero point of C², a coordinate on the nilpotent orbit of sl(2,C)
/// modulo ±1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UvPoint {
    pub u: C64,
    pub v: C64,
}

impl UvPoint {
    pub fn new(u: C64, v: C64) -> Result<Self> {
        if u == ZERO && v == ZERO {
            return Err(Error::Degenerate("(u, v) must be nonzero"));
        }
        Ok(Self { u, v })
    }

    /// From quaternion coordinates `u = x0 + i x1`, `v = x2 + i x3`.
    pub fn from_quaternion(x: [f64; 4]) -> Result<Self> {
        Self::new(C64::new(x[0], x[1]), C64::new(x[2], x[3]))
    }
}

fn nilpotent_image(a: C64, b: C64) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, |r, c| match (r, c) {
        (0, 0) => a * b,
        (0, 1) => a * a,
        (1, 0) => -(b * b),
        _ => -(a * b),
    })
}

/// `(u, v) ↦ [[uv, u²], [−v², −uv]]`.
pub fn vergne_map(p: &UvPoint) -> Result<ComplexMatrix> {
    if p.u == ZERO && p.v == ZERO {
        return Err(Error::Degenerate("(u, v) must be nonzero"));
    }
    Ok(nilpotent_image(p.u, p.v))
}

/// The same orbit map seen in the complex structure `j`: `(u, v)` is
/// replaced by `(u − i v̄, v + i ū)`.
pub fn vergne_map_j(p: &UvPoint) -> Result<ComplexMatrix> {
    let a = p.u - I * p.v.conj();
    let b = p.v + I * p.u.conj();
    if a == ZERO && b == ZERO {
        return Err(Error::Degenerate("u − i v̄ and v + i ū both vanish"));
    }
    Ok(nilpotent_image(a, b))
}

/// Real orbits of the nilpotent cone of sl(2,R).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealOrbit {
    Plus,
    Minus,
    NotReal,
}

/// Absolute tolerance for the realness of `u², v², uv`.
pub const REAL_TOL: f64 = 1e-10;

/// Classifies `(u, v)` by `sign(u² + v²)` when `u², v², uv` are real.
pub fn classify_real_orbit(p: &UvPoint) -> Result<RealOrbit> {
    let (uu, vv, uv) = (p.u * p.u, p.v * p.v, p.u * p.v);
    if uu.im.abs() > REAL_TOL || vv.im.abs() > REAL_TOL || uv.im.abs() > REAL_TOL {
        return Ok(RealOrbit::NotReal);
    }
    let s = uu.re + vv.re;
    if s.abs() <= REAL_TOL {
        return Err(Error::Degenerate("u² + v² vanishes on real data"));
    }
    Ok(if s > 0.0 { RealOrbit::Plus } else { RealOrbit::Minus })
}

/// Classification by quaternion coordinates: `x1 = x3 = 0` gives the plus
/// orbit and `x0 = x2 = 0` the minus orbit.
pub fn coordinate_criterion(p: &UvPoint) -> Option<RealOrbit> {
    let zero = |x: f64| x.abs() <= REAL_TOL;
    if zero(p.u.im) && zero(p.v.im) {
        Some(RealOrbit::Plus)
    } else if zero(p.u.re) && zero(p.v.re) {
        Some(RealOrbit::Minus)
    } else {
        None
    }
}

/// Normal forms of the two nonzero nilpotent SO(2,C)-orbits in symmetric
/// 2×2 matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FormClass {
    /// `b·[[i, 1], [1, −i]]`
    Plus(C64),
    /// `b·[[−i, 1], [1, i]]`
    Minus(C64),
    Neither,
}

/// Matches `M` against the plus and minus normal forms to `1e−10`
/// relative.
pub fn kc_orbit_form_check(m: &ComplexMatrix) -> FormClass {
    if m.dim() != 2 {
        return FormClass::Neither;
    }
    let b = m[(0, 1)];
    let scale = m.frobenius_norm();
    if b == ZERO || scale == 0.0 {
        return FormClass::Neither;
    }
    let form = |sign: f64| {
        ComplexMatrix::from_fn(2, |r, c| match (r, c) {
            (0, 0) => b * I * sign,
            (1, 1) => -(b * I * sign),
            _ => b,
        })
    };
    if m.max_abs_diff(&form(1.0)) <= 1e-10 * scale {
        FormClass::Plus(b)
    } else if m.max_abs_diff(&form(-1.0)) <= 1e-10 * scale {
        FormClass::Minus(b)
    } else {
        FormClass::Neither
    }
}

fn flatten(ms: &[ComplexMatrix]) -> Vec<Vec<C64>> {
    ms.iter().map(|m| m.as_slice().to_vec()).collect()
}

/// Complex dimensions of `[k^C, x]` and of `T_x O ∩ m^C` for `x ∈ m^C`.
///
/// The second is computed without assuming the splitting of the tangent
/// space, as `dim T + dim m^C − dim(T + m^C)` with `T = [g^C, x]`.
pub fn tangent_transitivity_check(spec: &SymmetricPairSpec, x: &ComplexMatrix) -> Result<(usize, usize)> {
    if x.dim() != spec.base.dim {
        return Err(Error::DimensionMismatch { expected: spec.base.dim, found: x.dim() });
    }
    let (xk, _) = spec.split_complex(x);
    let scale = x.frobenius_norm();
    if xk.frobenius_norm() > 1e-10 * scale.max(f64::MIN_POSITIVE) && scale > 0.0 {
        return Err(Error::NotInAlgebra { defect: xk.frobenius_norm() });
    }
    let tol = 1e-10;
    let (k_basis, m_basis) = spec.bases();
    let kx: Vec<ComplexMatrix> = k_basis.iter().map(|b| b.commutator(x)).collect();
    let gx: Vec<ComplexMatrix> = spec.base.basis().iter().map(|b| b.commutator(x)).collect();
    let dim_kx = complex_rank(&flatten(&kx), tol);
    let dim_t = complex_rank(&flatten(&gx), tol);
    let dim_m = complex_rank(&flatten(&m_basis), tol);
    let mut both = gx;
    both.extend(m_basis);
    let dim_sum = complex_rank(&flatten(&both), tol);
    Ok((dim_kx, dim_t + dim_m - dim_sum))
}

/// Identity matrix helper kept for symmetry with the normal forms.
pub fn plus_form_unit() -> ComplexMatrix {
    ComplexMatrix::from_fn(2, |r, c| match (r, c) {
        (0, 0) => I,
        (1, 1) => -I,
        _ => ONE,
    })
}
