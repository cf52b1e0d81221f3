//! Spectral curves `det(η·1 − β(ζ)) = 0` of the quadratic pencil
//! `β(ζ) = β + (α + α*)ζ − β*ζ²`.
//!
//! A curve is stored as the coefficient table of
//! `η^k + a_1(ζ)η^{k−1} + … + a_k(ζ)`, where `a_j` has degree at most `2j`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked elsewhere in the graph
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, I, ZERO};
use crate::nahm::{lax_extract, BoundaryTarget};
use crate::path::NahmData;
use crate::poly::{eval_ascending, interpolate_unit_roots, roots, unit_roots};

/// The pencil at one node.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    pub alpha: ComplexMatrix,
    pub beta: ComplexMatrix,
    /// Negative control: drop the `−β*ζ²` term, which breaks reality.
    pub drop_quadratic: bool,
}

impl Pencil {
    pub fn new(alpha: ComplexMatrix, beta: ComplexMatrix) -> Self {
        Self { alpha, beta, drop_quadratic: false }
    }

    pub fn without_quadratic(alpha: ComplexMatrix, beta: ComplexMatrix) -> Self {
        Self { alpha, beta, drop_quadratic: true }
    }

    pub fn dim(&self) -> usize {
        self.beta.dim()
    }

    /// `β(ζ) = β + (α + α*)ζ − β*ζ²`.
    pub fn beta_zeta(&self, zeta: C64) -> ComplexMatrix {
        let mut m = self.beta.clone();
        m.axpy(zeta, &(&self.alpha + &self.alpha.adjoint()));
        if !self.drop_quadratic {
            m.axpy(-zeta * zeta, &self.beta.adjoint());
        }
        m
    }

    /// `α(ζ) = α − β*ζ`.
    pub fn alpha_zeta(&self, zeta: C64) -> ComplexMatrix {
        let mut m = self.alpha.clone();
        if !self.drop_quadratic {
            m.axpy(-zeta, &self.beta.adjoint());
        }
        m
    }
}

/// Coefficient table of a spectral curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub k: usize,
    /// `a[j−1]` holds the ascending coefficients `c_0..c_{2j}` of `a_j(ζ)`.
    pub a: Vec<Vec<C64>>,
    /// Largest interpolated coefficient above degree `2j`; should vanish.
    pub degree_excess: f64,
}

impl SpectralData {
    /// Value of `a_j(ζ)`, `j ≥ 1`.
    pub fn coefficient(&self, j: usize, zeta: C64) -> C64 {
        eval_ascending(&self.a[j - 1], zeta)
    }

    /// Coefficients of the polynomial in `η` (descending) at fixed `ζ`.
    pub fn eta_polynomial(&self, zeta: C64) -> Vec<C64> {
        let mut p = vec![C64::new(1.0, 0.0)];
        p.extend((1..=self.k).map(|j| self.coefficient(j, zeta)));
        p
    }

    pub fn evaluate(&self, zeta: C64, eta: C64) -> C64 {
        crate::poly::eval_descending(&self.eta_polynomial(zeta), eta)
    }

    /// Largest coefficient magnitude (at least 1), used as a scale.
    pub fn scale(&self) -> f64 {
        self.a.iter().flatten().map(|c| c.norm()).fold(1.0, f64::max)
    }

    fn max_coeff_diff(&self, other: &Self) -> f64 {
        self.a
            .iter()
            .flatten()
            .zip(other.a.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// For k = 2, the discriminant `a_1² − 4a_2` (ascending, degree ≤ 4).
    pub fn discriminant(&self) -> Option<Vec<C64>> {
        if self.k != 2 {
            return None;
        }
        let a1 = &self.a[0];
        let a2 = &self.a[1];
        let mut d = vec![ZERO; 5];
        for (i, x) in a1.iter().enumerate() {
            for (j, y) in a1.iter().enumerate() {
                d[i + j] += x * y;
            }
        }
        for (i, c) in a2.iter().enumerate() {
            d[i] -= c * 4.0;
        }
        Some(d)
    }
}

/// Interpolates the `a_j` from `det(η − β(ζ))` at the `2k+1` roots of
/// unity.
pub fn char_coeffs(p: &Pencil) -> SpectralData {
    let k = p.dim();
    let samples = 2 * k + 1;
    let nodes = unit_roots(samples);
    let polys: Vec<Vec<C64>> = nodes.iter().map(|&z| p.beta_zeta(z).charpoly()).collect();
    let mut a = Vec::with_capacity(k);
    let mut excess = 0.0f64;
    for j in 1..=k {
        let values: Vec<C64> = polys.iter().map(|c| c[j]).collect();
        let coeffs = interpolate_unit_roots(&values);
        for c in &coeffs[(2 * j + 1).min(samples)..] {
            excess = excess.max(c.norm());
        }
        a.push(coeffs[..=2 * j].to_vec());
    }
    SpectralData { k, a, degree_excess: excess }
}

/// Largest `|det(η − β(ζ))` coefficient − interpolant| at the given
/// held-out `ζ`, relative to the curve scale.
pub fn holdout_residual(p: &Pencil, s: &SpectralData, zetas: &[C64]) -> f64 {
    let mut worst = 0.0f64;
    for &z in zetas {
        let direct = p.beta_zeta(z).charpoly();
        for j in 1..=s.k {
            let scale = s.scale() * (1.0 + z.norm()).powi(2 * j as i32);
            worst = worst.max((direct[j] - s.coefficient(j, z)).norm() / scale);
        }
    }
    worst
}

/// Pencil of the Lax pair at node `i`.
pub fn node_pencil(d: &NahmData, i: usize) -> Pencil {
    let c = d.components();
    let alpha = &c[0].values()[i] - &c[1].values()[i].scale(I);
    let beta = &c[2].values()[i] + &c[3].values()[i].scale(I);
    Pencil::new(alpha, beta)
}

/// Spectral data at every node.
pub fn curve_along(d: &NahmData) -> Vec<SpectralData> {
    (0..d.grid().len()).map(|i| char_coeffs(&node_pencil(d, i))).collect()
}

/// Largest coefficient drift from the first node, relative to
/// `max(1, max |c(s0)|)`.
pub fn conservation_check(d: &NahmData) -> f64 {
    let first = char_coeffs(&node_pencil(d, 0));
    let scale = first.scale();
    (1..d.grid().len())
        .map(|i| char_coeffs(&node_pencil(d, i)).max_coeff_diff(&first) / scale)
        .fold(0.0, f64::max)
}

/// Sup over nodes of `‖β̇(ζ) − [β(ζ), α(ζ)]‖` at a fixed `ζ`.
pub fn pencil_lax_residual(d: &NahmData, zeta: C64) -> f64 {
    let lax = lax_extract(d);
    let pencils: Vec<Pencil> = lax.alpha.iter().zip(&lax.beta).map(|(a, b)| Pencil::new(a.clone(), b.clone())).collect();
    let bz: Vec<ComplexMatrix> = pencils.iter().map(|p| p.beta_zeta(zeta)).collect();
    let dbz = crate::path::derivative(&bz, lax.grid.h());
    dbz.iter()
        .zip(&bz)
        .zip(&pencils)
        .map(|((d, b), p)| (d - &b.commutator(&p.alpha_zeta(zeta))).frobenius_norm())
        .fold(0.0, f64::max)
}

/// A point of the projective line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectivePoint {
    Finite(C64),
    Infinity,
}

/// Curve of the constant solution `T_i ≡ τ_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedCurve {
    pub data: SpectralData,
    /// For simultaneously diagonal `τ_i`: ascending coefficients of the
    /// quadratics `q_i` with curve `Π (η − q_i(ζ))`.
    pub factors: Option<Vec<[C64; 3]>>,
}

impl FixedCurve {
    /// Intersection points `ζ` of components `i < j` (with multiplicity;
    /// `Infinity` when the difference has degree below 2).
    pub fn intersections(&self) -> Vec<(usize, usize, Vec<ProjectivePoint>)> {
        let Some(f) = &self.factors else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let scale = f.iter().flatten().map(|c| c.norm()).fold(1.0, f64::max);
        let tol = 1e-12 * scale;
        for i in 0..f.len() {
            for j in (i + 1)..f.len() {
                let diff: [C64; 3] = [f[i][0] - f[j][0], f[i][1] - f[j][1], f[i][2] - f[j][2]];
                let mut pts = Vec::new();
                let deg = (0..3).rev().find(|&d| diff[d].norm() > tol);
                match deg {
                    None => {} // identical components
                    Some(d) => {
                        for _ in d..2 {
                            pts.push(ProjectivePoint::Infinity);
                        }
                        let desc: Vec<C64> = diff[..=d].iter().rev().copied().collect();
                        for r in roots(&desc) {
                            pts.push(ProjectivePoint::Finite(r));
                        }
                    }
                }
                out.push((i, j, pts));
            }
        }
        out
    }
}

/// Curve of the asymptotic constant solution: the pencil of `α = −iτ1`,
/// `β = τ2 + iτ3`, i.e. `det(η − (τ2+iτ3) + 2iτ1ζ − (τ2−iτ3)ζ²) = 0`.
pub fn fixed_curve(target: &BoundaryTarget) -> FixedCurve {
    let [t1, t2, t3] = &target.tau;
    let pencil = Pencil::new(t1.scale(-I), t2 + &t3.scale(I));
    let data = char_coeffs(&pencil);
    let k = target.dim();
    let off_diag = (0..k)
        .flat_map(|r| (0..k).filter(move |&c| c != r).map(move |c| (r, c)))
        .map(|(r, c)| t1[(r, c)].norm() + t2[(r, c)].norm() + t3[(r, c)].norm())
        .fold(0.0, f64::max);
    let factors = (off_diag == 0.0).then(|| {
        (0..k)
            .map(|i| {
                let (a, b, c) = (t1[(i, i)], t2[(i, i)], t3[(i, i)]);
                [b + I * c, -I * a * 2.0, b - I * c]
            })
            .collect()
    });
    FixedCurve { data, factors }
}

/// Largest violation of the coefficient form of the reality condition.
///
/// The involution `(ζ, η) ↦ (−1/ζ̄, −η̄/ζ̄²)` preserves the curve iff
/// `c_{j,2j−m} = (−1)^{j+m}·conj(c_{j,m})` for all `j` and `m`. The result
/// is relative to the curve scale.
pub fn reality_check(s: &SpectralData) -> f64 {
    let mut worst = 0.0f64;
    for j in 1..=s.k {
        let c = &s.a[j - 1];
        for m in 0..=2 * j {
            let sign = if (j + m) % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((c[2 * j - m] - c[m].conj() * sign).norm());
        }
    }
    worst / s.scale()
}

/// Brute-force reality test: maps curve points over each `ζ` through the
/// involution and evaluates the curve there. Returns the largest
/// `|P(ζ', η')|`, normalized by `Σ_j |a_j(ζ')|·|η'|^{k−j}`.
pub fn reality_check_bruteforce(s: &SpectralData, zetas: &[C64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &z in zetas {
        if z.norm() == 0.0 {
            return Err(Error::Degenerate("ζ = 0 is mapped to infinity"));
        }
        let zb = z.conj();
        let zp = -zb.inv();
        for eta in roots(&s.eta_polynomial(z)) {
            let ep = -eta.conj() / (zb * zb);
            let poly = s.eta_polynomial(zp);
            let norm: f64 = poly
                .iter()
                .enumerate()
                .map(|(j, c)| c.norm() * ep.norm().powi((s.k - j) as i32))
                .sum();
            let val = crate::poly::eval_descending(&poly, ep).norm();
            worst = worst.max(val / norm.max(f64::MIN_POSITIVE));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Su2Triple;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn example_pencil() -> Pencil {
        // T0 = 0, T1 = e3, T2 = e1, T3 = e2.
        let e = Su2Triple::standard();
        Pencil::new(e.e3.scale(-I), &e.e1 + &e.e2.scale(I))
    }

    #[test]
    fn pencil_assembly() {
        let p = example_pencil();
        let beta = ComplexMatrix::from_rows([[(0.0, 0.0), (0.0, 1.0)], [(0.0, 0.0), (0.0, 0.0)]]);
        assert!(p.beta.max_abs_diff(&beta) < 1e-16);
        let z = c(0.3, -0.8);
        let expect = ComplexMatrix::from_fn(2, |r, col| match (r, col) {
            (0, 0) => z,
            (0, 1) => I,
            (1, 0) => I * z * z,
            _ => -z,
        });
        assert!(p.beta_zeta(z).max_abs_diff(&expect) < 1e-15);
        assert_eq!(p.beta_zeta(ZERO), p.beta);
        assert_eq!(p.alpha_zeta(ZERO), p.alpha);
    }

    #[test]
    fn example_curve_is_eta_squared() {
        let s = char_coeffs(&example_pencil());
        assert!(s.a.iter().flatten().all(|x| x.norm() < 1e-15));
        assert!(s.degree_excess < 1e-15);
    }

    #[test]
    fn fixed_curve_of_rotation_generator() {
        let t = 1.7;
        let e = Su2Triple::standard();
        let z = ComplexMatrix::zeros(2);
        let target = BoundaryTarget::new([e.e3.scale_re(t), z.clone(), z], None, 1.0).unwrap();
        let f = fixed_curve(&target);
        // η² − t²ζ²
        let expect = [vec![ZERO; 3], vec![ZERO, ZERO, c(-t * t, 0.0), ZERO, ZERO]];
        for (got, want) in f.data.a.iter().zip(expect.iter()) {
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).norm() < 1e-14);
            }
        }
        let factors = f.factors.clone().unwrap();
        assert!((factors[0][1] - c(t, 0.0)).norm() < 1e-15);
        assert!((factors[1][1] - c(-t, 0.0)).norm() < 1e-15);
        let meets = f.intersections();
        assert_eq!(meets.len(), 1);
        let pts = &meets[0].2;
        assert!(pts.contains(&ProjectivePoint::Infinity));
        assert!(pts.iter().any(|p| matches!(p, ProjectivePoint::Finite(z) if z.norm() < 1e-14)));
        assert!(reality_check(&f.data) < 1e-15);
    }

    #[test]
    fn zero_target_gives_eta_to_the_k() {
        let z = ComplexMatrix::zeros(3);
        let target = BoundaryTarget::new([z.clone(), z.clone(), z], None, 1.0).unwrap();
        let f = fixed_curve(&target);
        assert!(f.data.a.iter().flatten().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn reality_condition_matches_bruteforce() {
        let e = Su2Triple::irreducible(3);
        let t1 = &e.e1.scale_re(0.4) + &e.e3.scale_re(-0.9);
        let t2 = &e.e2.scale_re(1.1) + &e.e1.scale_re(0.2);
        let t3 = e.e3.scale_re(0.7);
        let pencil = Pencil::new(t1.scale(-I), &t2 + &t3.scale(I));
        let s = char_coeffs(&pencil);
        let zetas: Vec<C64> = (0..20).map(|m| C64::from_polar(0.3 + 0.1 * m as f64, 0.7 * m as f64 + 0.2)).collect();
        assert!(reality_check(&s) < 1e-12);
        assert!(reality_check_bruteforce(&s, &zetas).unwrap() < 1e-9);

        let bad = char_coeffs(&Pencil::without_quadratic(t1.scale(-I), &t2 + &t3.scale(I)));
        assert!(reality_check(&bad) > 1e-2);
        assert!(reality_check_bruteforce(&bad, &zetas).unwrap() > 1e-3);
        assert!(holdout_residual(&pencil, &s, &zetas) < 1e-12);
    }
}
