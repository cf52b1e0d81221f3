//! Gauge transformations of path space.
//!
//! A gauge `g(s)` acts on a connection by `g.T = gTg⁻¹ − ġg⁻¹` and on the
//! other three components by conjugation. Trivializing a connection means
//! solving `ġ = g·T0` with `g(s0) = 1`; the endpoint `g(s1)` is the
//! monodromy, which identifies path space modulo based gauges with the group.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked elsewhere in the graph
use num_traits::Float;

use crate::algebra::{pairing, AlgebraSpec, Family};
use crate::banded::BandedSpd;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, I};
use crate::path::{derivative, quadrature, AlgebraPath, Grid, NahmData};

/// Unitary-flavor paths must satisfy `g†g = 1` to this tolerance.
pub const UNITARY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Unitary,
    Complex,
}

/// A node-sampled path in the group (unitary) or its complexification.
///
/// The derivative used by [`act`] is a finite difference of the samples
/// unless an exact one was attached with [`GroupPath::with_derivative`].
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPath {
    grid: Grid,
    values: Vec<ComplexMatrix>,
    flavor: Flavor,
    derivative: Option<Vec<ComplexMatrix>>,
}

impl GroupPath {
    pub fn new(grid: Grid, values: Vec<ComplexMatrix>, flavor: Flavor) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), found: values.len() });
        }
        let k = values[0].dim();
        for g in &values {
            if g.dim() != k {
                return Err(Error::DimensionMismatch { expected: k, found: g.dim() });
            }
            if flavor == Flavor::Unitary {
                let defect = unitarity_defect(g);
                if defect > UNITARY_TOL {
                    return Err(Error::InvalidArgument("unitary gauge path leaves the unitary group"));
                }
            } else if g.determinant().norm() == 0.0 {
                return Err(Error::Singular);
            }
        }
        Ok(Self { grid, values, flavor, derivative: None })
    }

    pub fn identity(grid: Grid, dim: usize, flavor: Flavor) -> Self {
        let values = (0..grid.len()).map(|_| ComplexMatrix::identity(dim)).collect();
        Self { grid, values, flavor, derivative: None }
    }

    /// Constant gauge `g(s) = x`.
    pub fn constant(grid: Grid, x: &ComplexMatrix, flavor: Flavor) -> Result<Self> {
        let mut g = Self::new(grid, (0..grid.len()).map(|_| x.clone()).collect(), flavor)?;
        g.derivative = Some((0..grid.len()).map(|_| ComplexMatrix::zeros(x.dim())).collect());
        Ok(g)
    }

    /// `g(s) = exp(f(s)·X)` with its exact derivative `f'(s)·X·g(s)`.
    pub fn exp_profile(
        grid: Grid,
        x: &ComplexMatrix,
        f: impl Fn(f64) -> f64,
        df: impl Fn(f64) -> f64,
        flavor: Flavor,
    ) -> Result<Self> {
        let values: Vec<_> = grid.nodes().map(|s| x.scale_re(f(s)).expm()).collect();
        let ders = grid
            .nodes()
            .zip(&values)
            .map(|(s, g)| &x.scale_re(df(s)) * g)
            .collect();
        Self::new(grid, values, flavor)?.with_derivative(ders)
    }

    /// Attaches an exact derivative, used by [`act`] instead of differences.
    pub fn with_derivative(mut self, ders: Vec<ComplexMatrix>) -> Result<Self> {
        if ders.len() != self.values.len() {
            return Err(Error::LengthMismatch { expected: self.values.len(), found: ders.len() });
        }
        self.derivative = Some(ders);
        Ok(self)
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
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn first(&self) -> &ComplexMatrix {
        &self.values[0]
    }

    pub fn last(&self) -> &ComplexMatrix {
        &self.values[self.grid.n]
    }

    /// Node-wise derivative: the attached exact one, or field differences.
    pub fn derivative_values(&self) -> Vec<ComplexMatrix> {
        match &self.derivative {
            Some(d) => d.clone(),
            None => derivative(&self.values, self.grid.h()),
        }
    }

    /// Node-wise product `(self·other)(s)`; exact derivatives compose by the
    /// product rule when both are attached.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let values: Vec<_> = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        let flavor = if self.flavor == Flavor::Unitary && other.flavor == Flavor::Unitary {
            Flavor::Unitary
        } else {
            Flavor::Complex
        };
        let derivative = match (&self.derivative, &other.derivative) {
            (Some(da), Some(db)) => Some(
                (0..values.len())
                    .map(|i| &(&da[i] * &other.values[i]) + &(&self.values[i] * &db[i]))
                    .collect(),
            ),
            _ => None,
        };
        Ok(Self { grid: self.grid, values, flavor, derivative })
    }

    /// Largest `‖g†g − 1‖` over the nodes.
    pub fn unitarity_defect(&self) -> f64 {
        self.values.iter().map(unitarity_defect).fold(0.0, f64::max)
    }
}

fn unitarity_defect(g: &ComplexMatrix) -> f64 {
    (&(&g.adjoint() * g) - &ComplexMatrix::identity(g.dim())).frobenius_norm()
}

/// `g.c = gcg⁻¹ − ġg⁻¹` for a single (possibly complex) connection path.
pub fn act_connection(g: &GroupPath, c: &AlgebraPath) -> Result<AlgebraPath> {
    check_compatible(g, c)?;
    let ders = g.derivative_values();
    let mut out = Vec::with_capacity(c.values().len());
    for ((gi, ci), di) in g.values.iter().zip(c.values()).zip(&ders) {
        let inv = gi.inverse()?;
        out.push(&(&(gi * ci) * &inv) - &(di * &inv));
    }
    AlgebraPath::new(g.grid, out)
}

/// Node-wise conjugation `gXg⁻¹`.
pub fn conjugate(g: &GroupPath, x: &AlgebraPath) -> Result<AlgebraPath> {
    check_compatible(g, x)?;
    let mut out = Vec::with_capacity(x.values().len());
    for (gi, xi) in g.values.iter().zip(x.values()) {
        out.push(&(gi * xi) * &gi.inverse()?);
    }
    AlgebraPath::new(g.grid, out)
}

fn check_compatible(g: &GroupPath, x: &AlgebraPath) -> Result<()> {
    if g.grid != *x.grid() {
        return Err(Error::GridMismatch);
    }
    if g.dim() != x.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: x.dim() });
    }
    Ok(())
}

/// Gauge action on `(T0, T1, T2, T3)`.
///
/// A finite-difference `ġ` of a unitary path is only tangent to the group up
/// to `O(h²)`; the new `T0` is projected back onto the algebra. Complex
/// gauges produce data in sl(k,C).
pub fn act(g: &GroupPath, d: &NahmData) -> Result<NahmData> {
    let spec = match g.flavor {
        Flavor::Unitary => *d.spec(),
        Flavor::Complex => AlgebraSpec { family: Family::SlComplex, dim: d.spec().dim },
    };
    let c = d.components();
    let t0 = act_connection(g, &c[0])?.map(|m| spec.project(m));
    let rest = [conjugate(g, &c[1])?, conjugate(g, &c[2])?, conjugate(g, &c[3])?];
    let [t1, t2, t3] = rest.map(|p| p.map(|m| spec.project(m)));
    NahmData::new(spec, [t0, t1, t2, t3])
}

/// Solves `ġ = g·A(s)`, `g(s0) = 1` by RK4, sampling `A` at half steps by
/// cubic interpolation. Unitary solutions are re-projected each step.
fn integrate_right(conn: &AlgebraPath, unitary: bool) -> Result<Vec<ComplexMatrix>> {
    let grid = conn.grid();
    let h = grid.h();
    let k = conn.dim();
    let mut g = ComplexMatrix::identity(k);
    let mut out = Vec::with_capacity(grid.len());
    out.push(g.clone());
    for i in 0..grid.n {
        let a0 = &conn.values()[i];
        let am = conn.sample(grid.node(i) + 0.5 * h);
        let a1 = &conn.values()[i + 1];
        let k1 = &g * a0;
        let mut y = g.clone();
        y.axpy(C64::new(0.5 * h, 0.0), &k1);
        let k2 = &y * &am;
        let mut y = g.clone();
        y.axpy(C64::new(0.5 * h, 0.0), &k2);
        let k3 = &y * &am;
        let mut y = g.clone();
        y.axpy(C64::new(h, 0.0), &k3);
        let k4 = &y * a1;
        let mut incr = k1;
        incr.axpy(C64::new(2.0, 0.0), &k2);
        incr.axpy(C64::new(2.0, 0.0), &k3);
        incr += &k4;
        g.axpy(C64::new(h / 6.0, 0.0), &incr);
        if unitary {
            g = g.unitary_projection()?;
        }
        out.push(g.clone());
    }
    Ok(out)
}

/// The unique unitary gauge with `g(s0) = 1` sending `T0` to zero.
pub fn trivialize(t0: &AlgebraPath) -> Result<GroupPath> {
    let spec = AlgebraSpec::su(t0.dim());
    for m in t0.values() {
        spec.check(m)?;
    }
    let values = integrate_right(t0, true)?;
    let mut g = GroupPath { grid: *t0.grid(), values, flavor: Flavor::Unitary, derivative: None };
    // The ODE itself supplies the exact derivative ġ = g·T0.
    let ders = g.values.iter().zip(t0.values()).map(|(gi, ti)| gi * ti).collect();
    g.derivative = Some(ders);
    Ok(g)
}

/// Endpoint `g(s1)` of the trivializing gauge.
pub fn monodromy(t0: &AlgebraPath) -> Result<ComplexMatrix> {
    Ok(trivialize(t0)?.last().clone())
}

/// The complex gauge `g̃` with `g̃(s0) = 1` sending `T0 + iT1` to zero,
/// obtained directly from `dg̃/ds = g̃·(T0 + iT1)`.
pub fn trivialize_complex(t0: &AlgebraPath, t1: &AlgebraPath) -> Result<GroupPath> {
    let conn = t0.zip_with(t1, |a, b| a + &b.scale(I))?;
    let values = integrate_right(&conn, false)?;
    let ders = values.iter().zip(conn.values()).map(|(gi, ci)| gi * ci).collect();
    Ok(GroupPath { grid: *t0.grid(), values, flavor: Flavor::Complex, derivative: Some(ders) })
}

/// Result of the two-stage complex trivialization of a level-set point.
#[derive(Clone, Debug)]
pub struct ComplexTrivialization {
    /// Real gauge with `g(s0) = 1` sending `T0` to zero.
    pub g: GroupPath,
    /// `T1(s0)`, the constant value of `g·T1`.
    pub t1_start: ComplexMatrix,
    /// `g̃(s1) = exp(i(s1 − s0)T1(s0))·g(s1)`.
    pub g_tilde_end: ComplexMatrix,
    /// Largest `‖g T1 g⁻¹ − T1(s0)‖` over the nodes.
    pub level_defect: f64,
}

/// Two-stage complex gauge fixing of `(T0, T1)` on the level set
/// `Ṫ1 = [T1, T0]`.
///
/// The real gauge `g` makes `T1` constant; `exp(i(s − s0)T1(s0))` then kills
/// the remaining constant connection. Inputs whose transformed `T1` drifts
/// by more than `tol` (relative to `max(1, ‖T1(s0)‖)`) are rejected.
pub fn complex_trivialize(t0: &AlgebraPath, t1: &AlgebraPath, tol: f64) -> Result<ComplexTrivialization> {
    if t0.grid() != t1.grid() {
        return Err(Error::GridMismatch);
    }
    let g = trivialize(t0)?;
    let t1_start = t1.first().clone();
    let mut defect = 0.0f64;
    for (gi, ti) in g.values.iter().zip(t1.values()) {
        let moved = &(gi * ti) * &gi.adjoint();
        defect = defect.max(moved.max_abs_diff(&t1_start));
    }
    let scale = t1_start.frobenius_norm().max(1.0);
    if defect > tol * scale {
        return Err(Error::LevelSetViolation { defect });
    }
    let grid = t0.grid();
    let shift = t1_start.scale(I * (grid.s1 - grid.s0)).expm();
    let g_tilde_end = &shift * g.last();
    Ok(ComplexTrivialization { g, t1_start, g_tilde_end, level_defect: defect })
}

fn check_dirichlet(rho: &AlgebraPath) -> Result<()> {
    let value = rho.first().frobenius_norm().max(rho.last().frobenius_norm());
    if value > 1e-12 {
        return Err(Error::BoundaryViolation { value });
    }
    Ok(())
}

/// Infinitesimal gauge direction `[ρ, T0] − ρ̇` of a based generator `ρ`
/// (`ρ(s0) = ρ(s1) = 0`), with `ρ̇` from the summation-by-parts operator.
pub fn orbit_direction(t0: &AlgebraPath, rho: &AlgebraPath) -> Result<AlgebraPath> {
    check_dirichlet(rho)?;
    rho.bracket(t0)?.sub(&rho.sbp_derivative())
}

/// L²-orthogonal projection of `t` onto the complement of the based gauge
/// orbit through `T0`.
///
/// Generators are expanded in the orthonormal su(k) basis at interior
/// nodes; their images overlap only between nodes at distance ≤ 2, so the
/// normal equations are banded and solved by Cholesky.
pub fn horizontal_project(t0: &AlgebraPath, t: &AlgebraPath) -> Result<AlgebraPath> {
    let (_, proj) = horizontal_split(t0, t)?;
    Ok(proj)
}

/// Returns the minimizing generator coefficients and the projection.
fn horizontal_split(t0: &AlgebraPath, t: &AlgebraPath) -> Result<(Vec<f64>, AlgebraPath)> {
    if t0.grid() != t.grid() {
        return Err(Error::GridMismatch);
    }
    let k = t0.dim();
    if t.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, found: t.dim() });
    }
    let grid = *t0.grid();
    let n = grid.n;
    let h = grid.h();
    let basis = AlgebraSpec::su(k).basis();
    let m = basis.len();
    let unknowns = (n - 1) * m;

    // Image of the generator supported at node i along basis[a], as up to
    // three (node, matrix) pairs.
    let image = |i: usize, a: usize| -> [(usize, ComplexMatrix); 3] {
        let e = &basis[a];
        let left = if i - 1 == 0 { 1.0 / h } else { 0.5 / h };
        let right = if i + 1 == n { 1.0 / h } else { 0.5 / h };
        [
            (i - 1, e.scale_re(-left)),
            (i, e.commutator(&t0.values()[i])),
            (i + 1, e.scale_re(right)),
        ]
    };
    let images: Vec<[(usize, ComplexMatrix); 3]> =
        (1..n).flat_map(|i| (0..m).map(move |a| (i, a))).map(|(i, a)| image(i, a)).collect();

    let mut gram = BandedSpd::zeros(unknowns, 3 * m - 1);
    let mut rhs = alloc::vec![0.0; unknowns];
    for p in 0..unknowns {
        for (node, v) in &images[p] {
            rhs[p] += grid.weight(*node) * pairing(v, &t.values()[*node]);
        }
        let hi = unknowns.min(p + 3 * m);
        for q in p..hi {
            let mut acc = 0.0;
            for (np, vp) in &images[p] {
                for (nq, vq) in &images[q] {
                    if np == nq {
                        acc += grid.weight(*np) * pairing(vp, vq);
                    }
                }
            }
            if acc != 0.0 {
                gram.add(q, p, acc);
            }
        }
    }
    let coeffs = gram.solve(&rhs)?;
    let mut values = t.values().to_vec();
    for (p, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        for (node, v) in &images[p] {
            values[*node].axpy(C64::new(-c, 0.0), v);
        }
    }
    Ok((coeffs, AlgebraPath::new(grid, values)?))
}

/// Quotient metric: the L² pairing of the horizontal projections.
pub fn quotient_metric(t0: &AlgebraPath, t: &AlgebraPath, t_prime: &AlgebraPath) -> Result<f64> {
    let a = horizontal_project(t0, t)?;
    let b = horizontal_project(t0, t_prime)?;
    a.inner(&b)
}

/// Largest `|⟨P t, V ρ⟩| / (‖P t‖·‖V ρ‖)` over the given generators: a
/// certificate that a projection is horizontal.
pub fn orthogonality_defect(t0: &AlgebraPath, projected: &AlgebraPath, generators: &[AlgebraPath]) -> Result<f64> {
    let pn = projected.inner(projected)?.max(0.0).sqrt();
    let mut worst = 0.0f64;
    for rho in generators {
        let v = orbit_direction(t0, rho)?;
        let vn = v.inner(&v)?.max(0.0).sqrt();
        if vn == 0.0 || pn == 0.0 {
            continue;
        }
        worst = worst.max((projected.inner(&v)? / (pn * vn)).abs());
    }
    Ok(worst)
}

/// Sup over nodes of `‖g.T0‖` for a trivializing gauge: the discrete
/// defect of the trivialization measured with field differences.
pub fn trivialization_residual(g: &GroupPath, t0: &AlgebraPath) -> Result<f64> {
    let plain = GroupPath { derivative: None, ..g.clone() };
    Ok(act_connection(&plain, t0)?.sup_norm())
}

/// Squared L² norm of a path, for convenience.
pub fn l2_norm_sq(p: &AlgebraPath) -> Result<f64> {
    let f: Vec<f64> = p.values().iter().map(|m| pairing(m, m)).collect();
    quadrature(&f, p.grid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Su2Triple;
    use core::f64::consts::PI;

    fn grid(n: usize) -> Grid {
        Grid::new(0.0, 1.0, n).unwrap()
    }

    fn dirichlet(grid: Grid, x: &ComplexMatrix, f: impl Fn(f64) -> f64) -> AlgebraPath {
        AlgebraPath::from_fn(grid, |s| x.scale_re(f(s))).map(|m| m.clone())
    }

    #[test]
    fn identity_gauge_is_trivial() {
        let g = grid(20);
        let e = Su2Triple::standard();
        let d = crate::nahm::coth_solution(1.0, 1.0, g).unwrap();
        let out = act(&GroupPath::identity(g, 2, Flavor::Unitary), &d).unwrap();
        for i in 0..4 {
            assert!(out.component(i).max_abs_diff(d.component(i)) < 1e-15);
        }
        let h = GroupPath::constant(g, &e.e1.scale_re(0.8).expm(), Flavor::Unitary).unwrap();
        let out = act(&h, &d).unwrap();
        let hv = &h.values()[3];
        let expect = &(hv * &d.component(1).values()[3]) * &hv.adjoint();
        assert!(out.component(1).values()[3].max_abs_diff(&expect) < 1e-14);
        assert!(out.component(0).sup_norm() < 1e-14);
    }

    #[test]
    fn constant_connection_trivializes_to_exponential() {
        let g = grid(50);
        let e = Su2Triple::standard();
        let x = (&e.e1 + &e.e3.scale_re(2.0)).scale_re(1.3);
        let path = AlgebraPath::constant(g, &x);
        let tr = trivialize(&path).unwrap();
        for (i, s) in g.nodes().enumerate() {
            // RK4 on 49 steps of length 1/49: error of order h⁴.
            assert!(tr.values()[i].max_abs_diff(&x.scale_re(s).expm()) < 1e-7);
        }
        let m = monodromy(&AlgebraPath::constant(g, &e.e3.scale_re(2.0 * PI))).unwrap();
        assert!(m.max_abs_diff(&ComplexMatrix::identity(2).scale_re(-1.0)) < 1e-6);
        let z = monodromy(&AlgebraPath::zeros(g, 2)).unwrap();
        assert_eq!(z, ComplexMatrix::identity(2));
    }

    #[test]
    fn trivialization_stays_unitary_and_kills_connection() {
        let g = grid(1000);
        let e = Su2Triple::standard();
        let t0 = AlgebraPath::from_fn(g, |s| &e.e1.scale_re(3.0 * (2.0 * s).cos()) + &e.e2.scale_re(5.0 * s));
        let tr = trivialize(&t0).unwrap();
        assert!(tr.unitarity_defect() < 1e-12);
        let res = trivialization_residual(&tr, &t0).unwrap();
        assert!(res < 1e-4, "res {res}");
    }

    #[test]
    fn g0_gauges_leave_monodromy_unchanged() {
        let g = grid(400);
        let e = Su2Triple::standard();
        let t0 = AlgebraPath::from_fn(g, |s| &e.e1.scale_re(1.0 + s) + &e.e3.scale_re(2.0 * s * s));
        let h1 = GroupPath::exp_profile(g, &e.e2, |s| 3.0 * (PI * s).sin(), |s| 3.0 * PI * (PI * s).cos(), Flavor::Unitary).unwrap();
        let h2 = GroupPath::exp_profile(g, &e.e1, |s| s * (1.0 - s) * 4.0, |s| 4.0 - 8.0 * s, Flavor::Unitary).unwrap();
        let h = h1.compose(&h2).unwrap();
        let moved = act_connection(&h, &t0).unwrap().map(|m| m.skew_hermitian_part());
        let a = monodromy(&t0).unwrap();
        let b = monodromy(&moved).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-8, "{}", a.max_abs_diff(&b));
    }

    #[test]
    fn general_gauge_transforms_monodromy() {
        let g = grid(400);
        let e = Su2Triple::standard();
        let t0 = AlgebraPath::from_fn(g, |s| &e.e1.scale_re(1.0 - s) + &e.e2.scale_re(0.5));
        let h = GroupPath::exp_profile(g, &e.e3, |s| 1.0 + s * s, |s| 2.0 * s, Flavor::Unitary).unwrap();
        let moved = act_connection(&h, &t0).unwrap();
        let m = monodromy(&t0).unwrap();
        let expect = &(h.first() * &m) * &h.last().adjoint();
        assert!(monodromy(&moved).unwrap().max_abs_diff(&expect) < 1e-9);
    }

    #[test]
    fn complex_trivialization_examples() {
        let g = grid(100);
        let e = Su2Triple::standard();
        let x = (&e.e1 + &e.e2.scale_re(0.5)).scale_re(0.7);
        let zero = AlgebraPath::zeros(g, 2);
        let ct = complex_trivialize(&zero, &AlgebraPath::constant(g, &x), 1e-6).unwrap();
        assert!(ct.g_tilde_end.max_abs_diff(&x.scale(I).expm()) < 1e-13);

        let c = -0.4;
        let ct = complex_trivialize(&AlgebraPath::constant(g, &x), &AlgebraPath::constant(g, &x.scale_re(c)), 1e-6).unwrap();
        let expect = &x.scale(I * c).expm() * &x.expm();
        assert!(ct.g_tilde_end.max_abs_diff(&expect) < 1e-10);
        let direct = trivialize_complex(&AlgebraPath::constant(g, &x), &AlgebraPath::constant(g, &x.scale_re(c))).unwrap();
        assert!(direct.last().max_abs_diff(&expect) < 1e-10);

        let (u, hh) = ct.g_tilde_end.polar_decompose().unwrap();
        // g̃ = exp(iX)·g(1) = g(1)·exp(i g(1)⁻¹ X g(1)); here X commutes with g(1).
        assert!(u.max_abs_diff(ct.g.last()) < 1e-10);
        assert!(hh.max_abs_diff(&x.scale_re(c)) < 1e-10);

        let broken = AlgebraPath::from_fn(g, |s| x.scale_re(1.0 + s));
        assert!(matches!(complex_trivialize(&zero, &broken, 1e-6), Err(Error::LevelSetViolation { .. })));
    }

    #[test]
    fn horizontal_projection_at_zero_connection() {
        let g = grid(200);
        let e = Su2Triple::standard();
        let zero = AlgebraPath::zeros(g, 2);
        let c = AlgebraPath::constant(g, &e.e1);
        assert!(horizontal_project(&zero, &c).unwrap().max_abs_diff(&c) < 1e-12);

        let full = dirichlet(g, &e.e1, |s| (2.0 * PI * s).sin());
        assert!(horizontal_project(&zero, &full).unwrap().sup_norm() < 1e-3);
        let half = dirichlet(g, &e.e1, |s| (PI * s).sin());
        let p = horizontal_project(&zero, &half).unwrap();
        let mean = AlgebraPath::constant(g, &e.e1.scale_re(2.0 / PI));
        assert!(p.max_abs_diff(&mean) < 1e-3, "{}", p.max_abs_diff(&mean));

        assert!((quotient_metric(&zero, &c, &c).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent_and_kills_vertical() {
        let g = grid(60);
        let e = Su2Triple::standard();
        let t0 = AlgebraPath::from_fn(g, |s| &e.e1.scale_re(s) + &e.e3.scale_re(1.0 - 2.0 * s));
        let t = AlgebraPath::from_fn(g, |s| &e.e2.scale_re((3.0 * s).exp()) + &e.e1.scale_re(s * s));
        let p = horizontal_project(&t0, &t).unwrap();
        let pp = horizontal_project(&t0, &p).unwrap();
        assert!(pp.max_abs_diff(&p) < 1e-10);

        let rho = dirichlet(g, &(&e.e1 + &e.e2), |s| s * (1.0 - s) * (5.0 * s).cos());
        let v = orbit_direction(&t0, &rho).unwrap();
        assert!(quotient_metric(&t0, &v, &v).unwrap().abs() < 1e-20);
        assert!(orthogonality_defect(&t0, &p, &[rho]).unwrap() < 1e-10);
    }

    #[test]
    fn orbit_direction_requires_based_generator() {
        let g = grid(10);
        let e = Su2Triple::standard();
        let r = orbit_direction(&AlgebraPath::zeros(g, 2), &AlgebraPath::constant(g, &e.e1));
        assert!(matches!(r, Err(Error::BoundaryViolation { .. })));
    }
}
