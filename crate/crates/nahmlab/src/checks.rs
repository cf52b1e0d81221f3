//! Seeded invariant measurements shared by the `check` command and the
//! acceptance suite. Each function returns raw errors; tolerances are
//! applied by the caller.

use std::f64::consts::PI;

use nahmlab_core::algebra::pairing;
use nahmlab_core::gauge::{
    act, act_connection, complex_trivialize, conjugate, monodromy, orbit_direction, quotient_metric, trivialize,
    trivialize_complex, Flavor, GroupPath,
};
use nahmlab_core::moment::{
    hamiltonian_check, kahler_potential_identity_check, mu_nahm, rho_star, s1_moment_identity_check, MomentKind,
    FD_STEP,
};
use nahmlab_core::nahm::{coth_solution, initial_values, integrate_baby, integrate_nahm, nil_solution, DEFAULT_BLOWUP_BOUND};
use nahmlab_core::path::{l2_metric, omega};
use nahmlab_core::spectral::{char_coeffs, node_pencil, reality_check, Pencil};
use nahmlab_core::symmetric::{
    classify_real_orbit, kc_orbit_form_check, tangent_transitivity_check, vergne_map_j, FormClass, RealOrbit,
    SymmetricPairSpec, UvPoint,
};
use nahmlab_core::{AlgebraPath, AlgebraSpec, ComplexMatrix, Grid, NahmData, Result, Su2Triple, TangentVector};

use crate::sampling::{self, SampleRng};

fn unit(n: usize) -> Result<Grid> {
    Grid::new(0.0, 1.0, n)
}

/// Closed-form test solutions on `[s0, s1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClosedForm {
    /// `σ(e_i)/(s + offset)` for the standard su(2) triple.
    Nil { offset: f64 },
    Coth { a: f64, offset: f64 },
}

impl ClosedForm {
    pub fn data(self, grid: Grid) -> Result<NahmData> {
        match self {
            ClosedForm::Nil { offset } => nil_solution(&Su2Triple::standard(), offset, grid),
            ClosedForm::Coth { a, offset } => coth_solution(a, offset, grid),
        }
    }
}

pub const NIL: ClosedForm = ClosedForm::Nil { offset: 1.0 };
pub const COTH: ClosedForm = ClosedForm::Coth { a: 1.0, offset: 1.0 };

/// Sup-norm moment-map residual of the exact closed form on `[0, 1]`.
pub fn closed_form_residual(form: ClosedForm, n: usize) -> Result<f64> {
    Ok(mu_nahm(&form.data(unit(n)?)?).max_sup())
}

/// Relative spectral-coefficient drift of the RK4 flow started at the
/// closed form's initial value, on `[0, length]` with `n` intervals.
pub fn conservation_drift(form: ClosedForm, length: f64, n: usize) -> Result<f64> {
    let grid = Grid::new(0.0, length, n)?;
    let init = initial_values(&form.data(grid)?);
    let d = integrate_nahm(AlgebraSpec::su(2), &init, grid, DEFAULT_BLOWUP_BOUND)?;
    Ok(nahmlab_core::spectral::conservation_check(&d))
}

fn dims(count: usize) -> impl Iterator<Item = (usize, AlgebraSpec)> {
    (0..count).map(|c| (c, AlgebraSpec::su(if c % 2 == 0 { 2 } else { 3 })))
}

/// Hamiltonian identity with the sign of `ω` flipped: the negative
/// control of the harness.
fn flipped_hamiltonian(d: &NahmData, rho: &AlgebraPath, v: &TangentVector, i: usize) -> Result<f64> {
    let star = rho_star(d, rho)?;
    let lhs = -omega(i, &star, v)?;
    let plus = mu_nahm(&d.perturbed(FD_STEP, v)?);
    let minus = mu_nahm(&d.perturbed(-FD_STEP, v)?);
    let dmu = plus.mu[i - 1].sub(&minus.mu[i - 1])?.scale_re(0.5 / FD_STEP);
    let rhs = dmu.inner(rho)?;
    let scale = (l2_metric(&star, &star)? * l2_metric(v, v)?).sqrt();
    Ok((lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE))
}

/// Largest relative Hamiltonian-identity error over `configs` random
/// configurations (alternating su(2) and su(3)), for the baby map and the
/// three Nahm moment maps.
pub fn hamiltonian_max(seed: u64, configs: usize, n: usize, flip_sign: bool) -> Result<f64> {
    let mut rng = sampling::rng(seed);
    let grid = unit(n)?;
    let mut worst = 0.0f64;
    for (_, spec) in dims(configs) {
        let d = sampling::data(&spec, grid, 1.0, &mut rng);
        let rho = sampling::based_path(&spec, grid, 1.0, &mut rng);
        let v = sampling::tangent(&spec, grid, 1.0, &mut rng);
        if flip_sign {
            for i in 1..=3 {
                worst = worst.max(flipped_hamiltonian(&d, &rho, &v, i)?);
            }
            continue;
        }
        for kind in [MomentKind::Baby, MomentKind::Nahm(1), MomentKind::Nahm(2), MomentKind::Nahm(3)] {
            worst = worst.max(hamiltonian_check(&d, &rho, &v, kind)?);
        }
    }
    Ok(worst)
}

/// `(bilinear identity, circle moment identity)` errors on `pairs` random
/// tangent pairs.
pub fn kahler_max(seed: u64, pairs: usize, n: usize) -> Result<(f64, f64)> {
    let mut rng = sampling::rng(seed);
    let grid = unit(n)?;
    let mut bilinear = 0.0f64;
    let mut circle = 0.0f64;
    for (_, spec) in dims(pairs) {
        let u = sampling::tangent(&spec, grid, 1.0, &mut rng);
        let v = sampling::tangent(&spec, grid, 1.0, &mut rng);
        bilinear = bilinear.max(kahler_potential_identity_check(&[(u, v.clone())])?);
        let d = sampling::data(&spec, grid, 1.0, &mut rng);
        circle = circle.max(s1_moment_identity_check(&d, &[v])?);
    }
    Ok((bilinear, circle))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuotientReport {
    /// `|quotient metric − pairing|` on constant tangents at `T0 ≡ 0`,
    /// relative to `max(1, |pairing|)`.
    pub constant: f64,
    /// Quotient norm of vertical directions relative to their L² norm.
    pub vertical: f64,
    /// Change of the quotient metric under constant gauges, relative.
    pub invariance: f64,
}

pub fn quotient_checks(seed: u64, samples: usize, n: usize) -> Result<QuotientReport> {
    let mut rng = sampling::rng(seed);
    let grid = unit(n)?;
    let mut out = QuotientReport { constant: 0.0, vertical: 0.0, invariance: 0.0 };
    for (_, spec) in dims(samples) {
        let zero = AlgebraPath::zeros(grid, spec.dim);
        let x = sampling::element(&spec, 1.0, &mut rng);
        let y = sampling::element(&spec, 1.0, &mut rng);
        let (cx, cy) = (AlgebraPath::constant(grid, &x), AlgebraPath::constant(grid, &y));
        for (a, b, p) in [(&cx, &cy, pairing(&x, &y)), (&cx, &cx, pairing(&x, &x))] {
            let q = quotient_metric(&zero, a, b)?;
            out.constant = out.constant.max((q - p).abs() / p.abs().max(1.0));
        }

        let t0 = sampling::path(&spec, grid, 1.0, &mut rng);
        for base in [&zero, &t0] {
            let rho = sampling::based_path(&spec, grid, 1.0, &mut rng);
            let v = orbit_direction(base, &rho)?;
            let q = quotient_metric(base, &v, &v)?.max(0.0).sqrt();
            out.vertical = out.vertical.max(q / v.inner(&v)?.sqrt());
        }

        let g = GroupPath::constant(grid, &sampling::element(&spec, 1.0, &mut rng).expm(), Flavor::Unitary)?;
        let t = sampling::path(&spec, grid, 1.0, &mut rng);
        let tp = sampling::path(&spec, grid, 1.0, &mut rng);
        let before = quotient_metric(&t0, &t, &tp)?;
        let after = quotient_metric(&act_connection(&g, &t0)?, &conjugate(&g, &t)?, &conjugate(&g, &tp)?)?;
        out.invariance = out.invariance.max((after - before).abs() / before.abs().max(1.0));
    }
    Ok(out)
}

/// Largest `‖g̃(1) − exp(iT1(0))·g(1)‖` over `count` random level-set
/// points built by the baby flow on `[0, 1]`.
pub fn complex_factorization_max(seed: u64, count: usize, n: usize) -> Result<f64> {
    let mut rng = sampling::rng(seed);
    let grid = unit(n)?;
    let mut worst = 0.0f64;
    for (_, spec) in dims(count) {
        let t0 = sampling::path(&spec, grid, 1.0, &mut rng);
        let t1_init = sampling::element(&spec, 1.0, &mut rng);
        let (t0, t1) = integrate_baby(&t1_init, &t0)?;
        let two_stage = complex_trivialize(&t0, &t1, 1e-6)?;
        let direct = trivialize_complex(&t0, &t1)?;
        worst = worst.max(direct.last().max_abs_diff(&two_stage.g_tilde_end));
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealityReport {
    /// Largest reality defect over all curves built from su(k) data.
    pub worst_real: f64,
    /// Smallest defect of the negative control over the same nodes.
    pub weakest_control: f64,
    pub curves: usize,
}

/// Reality of the curves of random su(2)/su(3) data and of the nil/coth
/// flows, and the negative control without the quadratic term.
pub fn reality_sweep(seed: u64, samples: usize, nodes: usize) -> Result<RealityReport> {
    let mut rng = sampling::rng(seed);
    let grid = unit(nodes)?;
    let mut sources: Vec<NahmData> = dims(samples).map(|(_, spec)| sampling::data(&spec, grid, 1.0, &mut rng)).collect();
    for form in [NIL, COTH] {
        let init = initial_values(&form.data(grid)?);
        sources.push(integrate_nahm(AlgebraSpec::su(2), &init, grid, DEFAULT_BLOWUP_BOUND)?);
    }
    let mut out = RealityReport { worst_real: 0.0, weakest_control: f64::INFINITY, curves: 0 };
    for (idx, d) in sources.iter().enumerate() {
        let random = idx < samples;
        for i in 0..d.grid().len() {
            let p = node_pencil(d, i);
            out.worst_real = out.worst_real.max(reality_check(&char_coeffs(&p)));
            out.curves += 1;
            if random {
                let control = char_coeffs(&Pencil::without_quadratic(p.alpha, p.beta));
                out.weakest_control = out.weakest_control.min(reality_check(&control));
            }
        }
    }
    Ok(out)
}

/// One row of the Vergne table.
#[derive(Clone, Debug, PartialEq)]
pub struct VergneRow {
    pub point: UvPoint,
    pub expected: RealOrbit,
    pub orbit: RealOrbit,
    pub image: ComplexMatrix,
    pub form: FormClass,
    /// Dimensions of `[k^C, x]` and `T_x O ∩ m^C`, when the image lies in
    /// `m^C`.
    pub transitivity: Option<(usize, usize)>,
}

impl VergneRow {
    pub fn misclassified(&self) -> bool {
        let form_ok = match self.orbit {
            RealOrbit::Plus => matches!(self.form, FormClass::Plus(_)),
            RealOrbit::Minus => matches!(self.form, FormClass::Minus(_)),
            RealOrbit::NotReal => true,
        };
        self.orbit != self.expected || !form_ok
    }

    pub fn transitive(&self) -> bool {
        self.transitivity.is_none_or(|(a, b)| a == b)
    }
}

pub fn vergne_row(point: UvPoint, expected: RealOrbit) -> Result<VergneRow> {
    let orbit = classify_real_orbit(&point)?;
    let image = vergne_map_j(&point)?;
    let form = kc_orbit_form_check(&image);
    let transitivity = tangent_transitivity_check(&SymmetricPairSpec::orthogonal(2), &image).ok();
    Ok(VergneRow { point, expected, orbit, image, form, transitivity })
}

/// `plus` points of the plus orbit followed by `minus` points of the minus
/// orbit, sampled in the disc of the given radius.
pub fn vergne_sweep(seed: u64, plus: usize, minus: usize, radius: f64) -> Result<Vec<VergneRow>> {
    let mut rng: SampleRng = sampling::rng(seed);
    let mut rows = Vec::with_capacity(plus + minus);
    for _ in 0..plus {
        rows.push(vergne_row(sampling::plus_point(radius, &mut rng), RealOrbit::Plus)?);
    }
    for _ in 0..minus {
        rows.push(vergne_row(sampling::minus_point(radius, &mut rng), RealOrbit::Minus)?);
    }
    Ok(rows)
}

/// Leakage along the flow for su(2)/so(2) and su(3)/s(u(2)×u(1)) starting
/// from random (g,k)-valued triples.
pub fn gk_leakage(seed: u64, n: usize) -> Result<[f64; 2]> {
    let mut rng = sampling::rng(seed);
    let grid = unit(n)?;
    let pairs = [SymmetricPairSpec::orthogonal(2), SymmetricPairSpec::block(2, 1)?];
    let mut out = [0.0; 2];
    for (slot, pair) in pairs.iter().enumerate() {
        let split = |x: &ComplexMatrix| pair.split(x);
        let (k1, _) = split(&sampling::element(&pair.base, 0.5, &mut rng))?;
        let (_, m2) = split(&sampling::element(&pair.base, 0.5, &mut rng))?;
        let (_, m3) = split(&sampling::element(&pair.base, 0.5, &mut rng))?;
        out[slot] = nahmlab_core::symmetric::flow_preserves_split(pair, &[k1, m2, m3], grid)?;
    }
    Ok(out)
}

/// Largest change of the monodromy under based gauges.
pub fn monodromy_invariance(seed: u64, samples: usize, n: usize) -> Result<f64> {
    let mut rng = sampling::rng(seed);
    let grid = unit(n)?;
    let mut worst = 0.0f64;
    for (_, spec) in dims(samples) {
        let t0 = sampling::path(&spec, grid, 1.0, &mut rng);
        let x = sampling::element(&spec, 1.0, &mut rng);
        let g = GroupPath::exp_profile(grid, &x, |s| (PI * s).sin(), |s| PI * (PI * s).cos(), Flavor::Unitary)?;
        let moved = act_connection(&g, &t0)?;
        worst = worst.max(monodromy(&moved)?.max_abs_diff(&monodromy(&t0)?));
    }
    Ok(worst)
}

/// Largest `‖g†g − 1‖` of trivializations of random connections.
pub fn trivialization_unitarity(seed: u64, samples: usize, n: usize) -> Result<f64> {
    let mut rng = sampling::rng(seed);
    let grid = unit(n)?;
    let mut worst = 0.0f64;
    for (_, spec) in dims(samples) {
        let t0 = sampling::path(&spec, grid, 2.0, &mut rng);
        worst = worst.max(trivialize(&t0)?.unitarity_defect());
    }
    Ok(worst)
}

/// Largest `‖μ(g.d) − gμ(d)g⁻¹‖` over random data and based gauges.
pub fn equivariance_defect(seed: u64, samples: usize, n: usize) -> Result<f64> {
    let mut rng = sampling::rng(seed);
    let grid = unit(n)?;
    let mut worst = 0.0f64;
    for (_, spec) in dims(samples) {
        let d = sampling::data(&spec, grid, 1.0, &mut rng);
        let x = sampling::element(&spec, 1.0, &mut rng);
        let g = GroupPath::exp_profile(grid, &x, |s| (PI * s).sin(), |s| PI * (PI * s).cos(), Flavor::Unitary)?;
        let moved = mu_nahm(&act(&g, &d)?);
        let before = mu_nahm(&d);
        for i in 0..3 {
            worst = worst.max(moved.mu[i].max_abs_diff(&conjugate(&g, &before.mu[i])?));
        }
    }
    Ok(worst)
}

/// Observed order `log2(e(n)/e(2n))`.
pub fn observed_order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}
