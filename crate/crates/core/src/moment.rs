//! Moment maps of the based gauge group, their Hamiltonian identities, the
//! circle moment map (a Kähler potential) and the Kostant–Kirillov–Souriau
//! form on adjoint orbits.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked elsewhere in the graph
use num_traits::Float;

use crate::algebra::{complex_pairing, pairing};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, I};
use crate::path::{l2_metric, omega, quadrature, AlgebraPath, NahmData, TangentVector};

/// Step of the central difference used for directional derivatives.
pub const FD_STEP: f64 = 1e-5;

/// The three Nahm moment maps sampled on the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentResidual {
    pub mu: [AlgebraPath; 3],
    pub sup_norms: [f64; 3],
}

impl MomentResidual {
    fn from_paths(mu: [AlgebraPath; 3]) -> Self {
        let sup_norms = [mu[0].sup_norm(), mu[1].sup_norm(), mu[2].sup_norm()];
        Self { mu, sup_norms }
    }

    pub fn max_sup(&self) -> f64 {
        self.sup_norms.iter().copied().fold(0.0, f64::max)
    }

    /// Rows `(s, ‖μ1(s)‖, ‖μ2(s)‖, ‖μ3(s)‖)`.
    pub fn rows(&self) -> Vec<[f64; 4]> {
        let g = self.mu[0].grid();
        let norms: [Vec<f64>; 3] = [self.mu[0].node_norms(), self.mu[1].node_norms(), self.mu[2].node_norms()];
        g.nodes()
            .enumerate()
            .map(|(i, s)| [s, norms[0][i], norms[1][i], norms[2][i]])
            .collect()
    }
}

/// Which moment map a Hamiltonian check is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentKind {
    /// `Ṫ1 + [T0, T1]` for the form `∫ dT0 ∧ dT1`.
    Baby,
    /// `μ_i` of the Nahm triple for `ω_i`, `i ∈ {1, 2, 3}`.
    Nahm(usize),
}

/// `Ṫ1 + [T0, T1]`.
pub fn mu_baby(t0: &AlgebraPath, t1: &AlgebraPath) -> Result<AlgebraPath> {
    t1.derivative().add(&t0.bracket(t1)?)
}

fn mu_component(d: &NahmData, i: usize) -> Result<AlgebraPath> {
    let c = d.components();
    let (j, k) = match i {
        1 => (2, 3),
        2 => (3, 1),
        3 => (1, 2),
        _ => return Err(Error::InvalidArgument("moment map index must be 1, 2 or 3")),
    };
    c[i].derivative().add(&c[0].bracket(&c[i])?)?.sub(&c[j].bracket(&c[k])?)
}

/// `μ_i = Ṫ_i + [T0, T_i] − [T_j, T_k]` for cyclic `(i, j, k)`.
pub fn mu_nahm(d: &NahmData) -> MomentResidual {
    let mu = [1, 2, 3].map(|i| mu_component(d, i).expect("components share a grid"));
    MomentResidual::from_paths(mu)
}

/// Complex moment map `β̇ + [α, β]` with `α = T0 − iT1`, `β = T2 + iT3`.
pub fn mu_complex(d: &NahmData) -> AlgebraPath {
    let c = d.components();
    let alpha = c[0].zip_with(&c[1], |a, b| a - &b.scale(I)).expect("shared grid");
    let beta = c[2].zip_with(&c[3], |a, b| a + &b.scale(I)).expect("shared grid");
    beta.derivative().add(&alpha.bracket(&beta).expect("shared grid")).expect("shared grid")
}

/// Vector field `ρ*` of a based generator on the quaternionic path space:
/// `([ρ,T0] − ρ̇, [ρ,T1], [ρ,T2], [ρ,T3])`.
pub fn rho_star(d: &NahmData, rho: &AlgebraPath) -> Result<TangentVector> {
    let c = d.components();
    let first = crate::gauge::orbit_direction(&c[0], rho)?;
    TangentVector::new([first, rho.bracket(&c[1])?, rho.bracket(&c[2])?, rho.bracket(&c[3])?])
}

fn tangent_norm(v: &TangentVector) -> Result<f64> {
    Ok(l2_metric(v, v)?.max(0.0).sqrt())
}

fn truncate_to_baby(v: &TangentVector) -> TangentVector {
    let c = v.components();
    let z = c[2].scale_re(0.0);
    TangentVector::new([c[0].clone(), c[1].clone(), z.clone(), z]).expect("shared grid")
}

/// Compares `ω(ρ*, v)` with `⟨dμ(v), ρ⟩` and returns
/// `|difference| / (‖ρ*‖·‖v‖)`.
///
/// The directional derivative is a central difference of the moment map
/// with step [`FD_STEP`]. For the baby map only `(T0, T1)` and `(v0, v1)`
/// enter, with the form `∫⟨t0, t1'⟩ − ⟨t1, t0'⟩`.
pub fn hamiltonian_check(d: &NahmData, rho: &AlgebraPath, v: &TangentVector, which: MomentKind) -> Result<f64> {
    let star = rho_star(d, rho)?;
    let (lhs, star_for_scale, v_for_scale) = match which {
        MomentKind::Baby => {
            let s = truncate_to_baby(&star);
            let vb = truncate_to_baby(v);
            let c = s.components();
            let w = vb.components();
            let val = c[0].inner(&w[1])? - c[1].inner(&w[0])?;
            (val, s, vb)
        }
        MomentKind::Nahm(i) => (omega(i, &star, v)?, star, v.clone()),
    };
    let moment = |p: &NahmData| -> Result<AlgebraPath> {
        match which {
            MomentKind::Baby => mu_baby(p.component(0), p.component(1)),
            MomentKind::Nahm(i) => mu_component(p, i),
        }
    };
    let plus = moment(&d.perturbed(FD_STEP, v)?)?;
    let minus = moment(&d.perturbed(-FD_STEP, v)?)?;
    let dmu = plus.sub(&minus)?.scale_re(0.5 / FD_STEP);
    let rhs = dmu.inner(rho)?;
    let scale = tangent_norm(&star_for_scale)? * tangent_norm(&v_for_scale)?;
    if scale == 0.0 {
        return Ok((lhs - rhs).abs());
    }
    Ok((lhs - rhs).abs() / scale)
}

/// Circle moment map `½∫(‖T2‖² + ‖T3‖²) ds`.
pub fn kahler_potential(d: &NahmData) -> f64 {
    potential_of_tangent(&d.to_tangent())
}

fn potential_of_tangent(v: &TangentVector) -> f64 {
    let c = v.components();
    let f: Vec<f64> = c[2]
        .values()
        .iter()
        .zip(c[3].values())
        .map(|(a, b)| 0.5 * (pairing(a, a) + pairing(b, b)))
        .collect();
    quadrature(&f, v.grid()).expect("node count matches grid")
}

/// Hessian of the circle moment map, by polarization of the quadratic form.
fn potential_hessian(a: &TangentVector, b: &TangentVector) -> Result<f64> {
    Ok(potential_of_tangent(&a.add(b)?) - potential_of_tangent(a) - potential_of_tangent(b))
}

/// Compares the two-form `d I₂ d μ` with `ω₂` on the given tangent pairs.
///
/// On the flat path space `μ` is a quadratic form, so `d I₂ d μ(u, v) =
/// −H(u, I₂v) + H(v, I₂u)` with `H` its Hessian. Returns the largest
/// `|B(u,v) − ω₂(u,v)| / (‖u‖‖v‖)`.
pub fn kahler_potential_identity_check(pairs: &[(TangentVector, TangentVector)]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (u, v) in pairs {
        let i2u = crate::path::complex_structure(2, u)?;
        let i2v = crate::path::complex_structure(2, v)?;
        let b = -potential_hessian(u, &i2v)? + potential_hessian(v, &i2u)?;
        let w = omega(2, u, v)?;
        let scale = (tangent_norm(u)? * tangent_norm(v)?).max(f64::MIN_POSITIVE);
        worst = worst.max((b - w).abs() / scale);
    }
    Ok(worst)
}

/// Compares `dμ(v)` with `ω₁(θ*, v)` for the circle generator
/// `θ* = (0, 0, −T3, T2)`. Returns the largest relative deviation.
pub fn s1_moment_identity_check(d: &NahmData, directions: &[TangentVector]) -> Result<f64> {
    let c = d.components();
    let z = c[0].scale_re(0.0);
    let theta_star = TangentVector::new([z.clone(), z, c[3].scale_re(-1.0), c[2].clone()])?;
    let base = d.to_tangent();
    let mu0 = potential_of_tangent(&base);
    let mut worst = 0.0f64;
    for v in directions {
        // Exact for a quadratic form: Q(d + v) − Q(d) − Q(v) = dQ_d(v).
        let dmu = potential_of_tangent(&base.add(v)?) - mu0 - potential_of_tangent(v);
        let w = omega(1, &theta_star, v)?;
        let scale = (tangent_norm(&theta_star)? * tangent_norm(v)?).max(f64::MIN_POSITIVE);
        worst = worst.max((dmu - w).abs() / scale);
    }
    Ok(worst)
}

/// Kostant–Kirillov–Souriau form at `x`: `ω([ρ,x], [ρ',x]) = ⟨[ρ,ρ'], x⟩`,
/// with the pairing extended complex-bilinearly.
pub fn kks_form(x: &ComplexMatrix, rho: &ComplexMatrix, rho_prime: &ComplexMatrix) -> C64 {
    complex_pairing(&rho.commutator(rho_prime), x)
}
