//! Discretized path space: grids, quadrature, difference operators, the flat
//! L² metric, the quaternionic complex structures and the SO(3)/S¹ actions.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked elsewhere in the graph
use num_traits::Float;

use crate::algebra::{pairing, AlgebraSpec};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// Uniform grid on `[s0, s1]` with `n` intervals (`n + 1` nodes).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub s0: f64,
    pub s1: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(s0: f64, s1: f64, n: usize) -> Result<Self> {
        if !(s0.is_finite() && s1.is_finite()) || s1 <= s0 {
            return Err(Error::InvalidArgument("grid needs finite endpoints with s0 < s1"));
        }
        if n < 2 {
            return Err(Error::InvalidArgument("grid needs at least 2 intervals"));
        }
        Ok(Self { s0, s1, n })
    }

    #[inline]
    pub fn h(&self) -> f64 {
        (self.s1 - self.s0) / self.n as f64
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n + 1
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        if i == self.n {
            self.s1
        } else {
            self.s0 + i as f64 * self.h()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(move |i| self.node(i))
    }

    /// Trapezoid weights.
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.n {
            0.5 * self.h()
        } else {
            self.h()
        }
    }

    /// Same grid with the number of intervals multiplied by `factor`.
    pub fn refined(&self, factor: usize) -> Self {
        Self { n: self.n * factor, ..*self }
    }
}

/// Trapezoid rule for node-sampled values.
pub fn quadrature(f: &[f64], grid: &Grid) -> Result<f64> {
    if f.len() != grid.len() {
        return Err(Error::LengthMismatch { expected: grid.len(), found: f.len() });
    }
    Ok(f.iter().enumerate().map(|(i, v)| grid.weight(i) * v).sum())
}

/// Field derivative: centered differences in the interior, second-order
/// one-sided stencils at both ends.
pub fn derivative(values: &[ComplexMatrix], h: f64) -> Vec<ComplexMatrix> {
    let n = values.len() - 1;
    assert!(n >= 2, "derivative needs at least 3 nodes");
    let c = 1.0 / (2.0 * h);
    (0..=n)
        .map(|i| {
            if i == 0 {
                let mut d = values[1].scale_re(4.0);
                d -= &values[0].scale_re(3.0);
                d -= &values[2];
                d.scale_re(c)
            } else if i == n {
                let mut d = values[n].scale_re(3.0);
                d -= &values[n - 1].scale_re(4.0);
                d += &values[n - 2];
                d.scale_re(c)
            } else {
                (&values[i + 1] - &values[i - 1]).scale_re(c)
            }
        })
        .collect()
}

/// Summation-by-parts derivative: centered in the interior, first-order
/// one-sided at the ends.
///
/// With trapezoid weights `W` this operator satisfies
/// `W D + (W D)ᵀ = diag(−1, 0, …, 0, 1)`, so `∫⟨Dρ, t⟩ = −∫⟨ρ, Dt⟩` holds
/// exactly whenever `ρ` vanishes at both ends. Gauge generators use it.
pub fn sbp_derivative(values: &[ComplexMatrix], h: f64) -> Vec<ComplexMatrix> {
    let n = values.len() - 1;
    assert!(n >= 1, "derivative needs at least 2 nodes");
    (0..=n)
        .map(|i| {
            if i == 0 {
                (&values[1] - &values[0]).scale_re(1.0 / h)
            } else if i == n {
                (&values[n] - &values[n - 1]).scale_re(1.0 / h)
            } else {
                (&values[i + 1] - &values[i - 1]).scale_re(0.5 / h)
            }
        })
        .collect()
}

/// A node-sampled matrix-valued path.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPath {
    grid: Grid,
    values: Vec<ComplexMatrix>,
}

impl AlgebraPath {
    pub fn new(grid: Grid, values: Vec<ComplexMatrix>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), found: values.len() });
        }
        let k = values[0].dim();
        if let Some(bad) = values.iter().find(|m| m.dim() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: bad.dim() });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64) -> ComplexMatrix) -> Self {
        let values: Vec<_> = grid.nodes().map(&mut f).collect();
        let k = values[0].dim();
        assert!(values.iter().all(|m| m.dim() == k), "from_fn: inconsistent sizes");
        Self { grid, values }
    }

    pub fn constant(grid: Grid, x: &ComplexMatrix) -> Self {
        Self { grid, values: (0..grid.len()).map(|_| x.clone()).collect() }
    }

    pub fn zeros(grid: Grid, dim: usize) -> Self {
        Self::constant(grid, &ComplexMatrix::zeros(dim))
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[ComplexMatrix] {
        &self.values
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn first(&self) -> &ComplexMatrix {
        &self.values[0]
    }

    pub fn last(&self) -> &ComplexMatrix {
        &self.values[self.grid.n]
    }

    pub fn into_values(self) -> Vec<ComplexMatrix> {
        self.values
    }

    pub fn map(&self, f: impl FnMut(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(f).collect() }
    }

    /// Node-wise combination of two paths on the same grid.
    pub fn zip_with(
        &self,
        other: &Self,
        mut f: impl FnMut(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map(|m| m.scale(c))
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.map(|m| m.scale_re(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Node-wise bracket `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.commutator(b))
    }

    pub fn derivative(&self) -> Self {
        Self { grid: self.grid, values: derivative(&self.values, self.grid.h()) }
    }

    pub fn sbp_derivative(&self) -> Self {
        Self { grid: self.grid, values: sbp_derivative(&self.values, self.grid.h()) }
    }

    /// Frobenius norm at every node.
    pub fn node_norms(&self) -> Vec<f64> {
        self.values.iter().map(ComplexMatrix::frobenius_norm).collect()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(ComplexMatrix::frobenius_norm).fold(0.0, f64::max)
    }

    /// `∫ pairing(self, other) ds`.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let f: Vec<f64> = self.values.iter().zip(&other.values).map(|(a, b)| pairing(a, b)).collect();
        quadrature(&f, &self.grid)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Value at an arbitrary parameter by cubic Lagrange interpolation on the
    /// four nearest nodes.
    pub fn sample(&self, s: f64) -> ComplexMatrix {
        let g = &self.grid;
        let n = g.n;
        let x = ((s - g.s0) / g.h()).clamp(0.0, n as f64);
        let base = if n < 3 { 0 } else { (x.floor() as usize).saturating_sub(1).min(n - 3) };
        let count = if n < 3 { n + 1 } else { 4 };
        let mut out = ComplexMatrix::zeros(self.dim());
        for a in 0..count {
            let xa = (base + a) as f64;
            let mut w = 1.0;
            for b in 0..count {
                if a != b {
                    let xb = (base + b) as f64;
                    w *= (x - xb) / (xa - xb);
                }
            }
            out.axpy(C64::new(w, 0.0), &self.values[base + a]);
        }
        out
    }
}

fn shared_grid(paths: &[AlgebraPath]) -> Result<Grid> {
    let g = *paths[0].grid();
    let k = paths[0].dim();
    for p in &paths[1..] {
        if *p.grid() != g {
            return Err(Error::GridMismatch);
        }
        if p.dim() != k {
            return Err(Error::DimensionMismatch { expected: k, found: p.dim() });
        }
    }
    Ok(g)
}

/// A point `(T0, T1, T2, T3)` of the quaternionic path space.
#[derive(Clone, Debug, PartialEq)]
pub struct NahmData {
    spec: AlgebraSpec,
    components: [AlgebraPath; 4],
}

impl NahmData {
    /// Validates the shared grid, the matrix size and algebra membership of
    /// every sample.
    pub fn new(spec: AlgebraSpec, components: [AlgebraPath; 4]) -> Result<Self> {
        shared_grid(&components)?;
        for c in &components {
            for m in c.values() {
                spec.check(m)?;
            }
        }
        Ok(Self { spec, components })
    }

    /// Assembles without membership checks; callers guarantee validity.
    pub(crate) fn assemble(spec: AlgebraSpec, components: [AlgebraPath; 4]) -> Self {
        debug_assert!(shared_grid(&components).is_ok());
        Self { spec, components }
    }

    /// Constant data `T0 = 0`, `Ti = τi`.
    pub fn constant(spec: AlgebraSpec, grid: Grid, tau: [&ComplexMatrix; 3]) -> Result<Self> {
        let zero = AlgebraPath::zeros(grid, spec.dim);
        Self::new(
            spec,
            [zero, AlgebraPath::constant(grid, tau[0]), AlgebraPath::constant(grid, tau[1]), AlgebraPath::constant(grid, tau[2])],
        )
    }

    #[inline]
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        self.components[0].grid()
    }

    #[inline]
    pub fn component(&self, i: usize) -> &AlgebraPath {
        &self.components[i]
    }

    #[inline]
    pub fn components(&self) -> &[AlgebraPath; 4] {
        &self.components
    }

    pub fn into_components(self) -> [AlgebraPath; 4] {
        self.components
    }

    /// The data viewed as a tangent vector of the flat path space.
    pub fn to_tangent(&self) -> TangentVector {
        TangentVector { components: self.components.clone() }
    }

    /// `self + ε·v`, without membership checks.
    pub fn perturbed(&self, eps: f64, v: &TangentVector) -> Result<Self> {
        let comps = v.combine_with(&self.to_tangent(), |t, x| x + &t.scale_re(eps))?;
        Ok(Self { spec: self.spec, components: comps.components })
    }
}

/// A tangent vector `(t0, t1, t2, t3)` of the flat path space.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    components: [AlgebraPath; 4],
}

impl TangentVector {
    pub fn new(components: [AlgebraPath; 4]) -> Result<Self> {
        shared_grid(&components)?;
        Ok(Self { components })
    }

    pub fn zeros(grid: Grid, dim: usize) -> Self {
        let z = AlgebraPath::zeros(grid, dim);
        Self { components: [z.clone(), z.clone(), z.clone(), z] }
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        self.components[0].grid()
    }

    #[inline]
    pub fn component(&self, i: usize) -> &AlgebraPath {
        &self.components[i]
    }

    #[inline]
    pub fn components(&self) -> &[AlgebraPath; 4] {
        &self.components
    }

    pub fn scale_re(&self, c: f64) -> Self {
        Self { components: self.components.clone().map(|p| p.scale_re(c)) }
    }

    fn combine_with(
        &self,
        other: &Self,
        mut f: impl FnMut(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self> {
        let c = &self.components;
        let o = &other.components;
        Ok(Self {
            components: [
                c[0].zip_with(&o[0], &mut f)?,
                c[1].zip_with(&o[1], &mut f)?,
                c[2].zip_with(&o[2], &mut f)?,
                c[3].zip_with(&o[3], &mut f)?,
            ],
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine_with(other, |a, b| a - b)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// Flat L² metric `∫ Σ pairing(u_i, v_i) ds`.
pub fn l2_metric(u: &TangentVector, v: &TangentVector) -> Result<f64> {
    let mut total = 0.0;
    for (a, b) in u.components.iter().zip(&v.components) {
        total += a.inner(b)?;
    }
    Ok(total)
}

/// Right multiplication by the quaternion units `i`, `j`, `k`:
///
/// - `I₁(t0,t1,t2,t3) = (−t1, t0, t3, −t2)`
/// - `I₂(t0,t1,t2,t3) = (−t2, −t3, t0, t1)`
/// - `I₃(t0,t1,t2,t3) = (−t3, t2, −t1, t0)`
///
/// Right multiplication reverses products, so `I₂I₁ = I₃`.
pub fn complex_structure(which: usize, v: &TangentVector) -> Result<TangentVector> {
    let [t0, t1, t2, t3] = &v.components;
    let neg = |p: &AlgebraPath| p.scale_re(-1.0);
    let components = match which {
        1 => [neg(t1), t0.clone(), t3.clone(), neg(t2)],
        2 => [neg(t2), neg(t3), t0.clone(), t1.clone()],
        3 => [neg(t3), t2.clone(), neg(t1), t0.clone()],
        _ => return Err(Error::InvalidArgument("complex structure index must be 1, 2 or 3")),
    };
    Ok(TangentVector { components })
}

/// Symplectic form `ω_i(u, v) = g(I_i u, v)`.
pub fn omega(which: usize, u: &TangentVector, v: &TangentVector) -> Result<f64> {
    l2_metric(&complex_structure(which, u)?, v)
}

/// Rotates `(T1, T2, T3)` by a 3×3 rotation, `T'_i = Σ_j a_ij T_j`.
pub fn so3_rotate(a: &[[f64; 3]; 3], d: &NahmData) -> Result<NahmData> {
    let mut defect = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let dot: f64 = (0..3).map(|k| a[k][i] * a[k][j]).sum();
            let expect = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((dot - expect).abs());
        }
    }
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    defect = defect.max((det - 1.0).abs());
    if defect > 1e-10 {
        return Err(Error::NotRotation { defect });
    }
    let c = &d.components;
    let rotate = |row: &[f64; 3]| {
        let mut values = Vec::with_capacity(d.grid().len());
        for node in 0..d.grid().len() {
            let mut m = ComplexMatrix::zeros(d.spec.dim);
            for j in 0..3 {
                m.axpy(C64::new(row[j], 0.0), &c[j + 1].values[node]);
            }
            values.push(m);
        }
        AlgebraPath { grid: *d.grid(), values }
    };
    Ok(NahmData {
        spec: d.spec,
        components: [c[0].clone(), rotate(&a[0]), rotate(&a[1]), rotate(&a[2])],
    })
}

/// Rotation matrix about the given axis (0, 1, 2) by `theta`.
pub fn axis_rotation(axis: usize, theta: f64) -> [[f64; 3]; 3] {
    let (s, c) = theta.sin_cos();
    let (p, q) = ((axis + 1) % 3, (axis + 2) % 3);
    let mut r = [[0.0; 3]; 3];
    r[axis][axis] = 1.0;
    r[p][p] = c;
    r[p][q] = -s;
    r[q][p] = s;
    r[q][q] = c;
    r
}

/// Circle action `T2 + iT3 ↦ e^{iθ}(T2 + iT3)`.
pub fn s1_action(theta: f64, d: &NahmData) -> NahmData {
    let (s, c) = theta.sin_cos();
    let [t0, t1, t2, t3] = &d.components;
    let n2 = t2.zip_with(t3, |a, b| &a.scale_re(c) - &b.scale_re(s)).expect("shared grid");
    let n3 = t2.zip_with(t3, |a, b| &a.scale_re(s) + &b.scale_re(c)).expect("shared grid");
    NahmData { spec: d.spec, components: [t0.clone(), t1.clone(), n2, n3] }
}
