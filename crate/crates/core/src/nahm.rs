//! Initial- and boundary-value solvers for Nahm's equations in the gauge
//! `T0 ≡ 0`, closed-form reference solutions, Lax extraction and half-line
//! orbit identification.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)] // inherent when std is linked elsewhere in the graph
use num_traits::Float;

use crate::algebra::{AlgebraSpec, Family, Su2Triple};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, I};
use crate::path::{AlgebraPath, Grid, NahmData};

/// Default bound on `‖T_i‖` beyond which a flow counts as blown up.
pub const DEFAULT_BLOWUP_BOUND: f64 = 1e6;

/// `α = T0 − iT1` and `β = T2 + iT3` at every node.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxPair {
    pub grid: Grid,
    pub alpha: Vec<ComplexMatrix>,
    pub beta: Vec<ComplexMatrix>,
}

impl LaxPair {
    /// Sup over nodes of `‖β̇ − [β, α]‖` with field differences.
    pub fn residual(&self) -> f64 {
        let db = crate::path::derivative(&self.beta, self.grid.h());
        db.iter()
            .zip(&self.beta)
            .zip(&self.alpha)
            .map(|((d, b), a)| (d - &b.commutator(a)).frobenius_norm())
            .fold(0.0, f64::max)
    }
}

pub fn lax_extract(d: &NahmData) -> LaxPair {
    let c = d.components();
    let alpha = c[0].values().iter().zip(c[1].values()).map(|(t0, t1)| t0 - &t1.scale(I)).collect();
    let beta = c[2].values().iter().zip(c[3].values()).map(|(t2, t3)| t2 + &t3.scale(I)).collect();
    LaxPair { grid: *d.grid(), alpha, beta }
}

fn nahm_rhs(t: &[ComplexMatrix; 3]) -> [ComplexMatrix; 3] {
    [t[1].commutator(&t[2]), t[2].commutator(&t[0]), t[0].commutator(&t[1])]
}

fn shifted(t: &[ComplexMatrix; 3], k: &[ComplexMatrix; 3], c: f64) -> [ComplexMatrix; 3] {
    let mut out = t.clone();
    for (o, d) in out.iter_mut().zip(k) {
        o.axpy(C64::new(c, 0.0), d);
    }
    out
}

fn rk4_nahm_step(t: &[ComplexMatrix; 3], h: f64, spec: &AlgebraSpec) -> [ComplexMatrix; 3] {
    let k1 = nahm_rhs(t);
    let k2 = nahm_rhs(&shifted(t, &k1, 0.5 * h));
    let k3 = nahm_rhs(&shifted(t, &k2, 0.5 * h));
    let k4 = nahm_rhs(&shifted(t, &k3, h));
    let mut out = t.clone();
    for i in 0..3 {
        let mut incr = k1[i].clone();
        incr.axpy(C64::new(2.0, 0.0), &k2[i]);
        incr.axpy(C64::new(2.0, 0.0), &k3[i]);
        incr += &k4[i];
        out[i].axpy(C64::new(h / 6.0, 0.0), &incr);
        out[i] = spec.project(&out[i]);
    }
    out
}

fn blown_up(t: &[ComplexMatrix; 3], bound: f64) -> Option<f64> {
    let norm = t.iter().map(ComplexMatrix::frobenius_norm).fold(0.0, f64::max);
    if !norm.is_finite() || norm > bound {
        Some(norm)
    } else {
        None
    }
}

fn check_init(spec: &AlgebraSpec, init: &[ComplexMatrix; 3]) -> Result<()> {
    for m in init {
        spec.check(m)?;
    }
    Ok(())
}

/// RK4 solution of `Ṫ1 = [T2,T3]` (cyclically) with `T0 ≡ 0`.
///
/// Samples are projected onto the algebra after every step. Fails with
/// [`Error::BlowUp`] once some `‖T_i‖` exceeds `bound`.
pub fn integrate_nahm(spec: AlgebraSpec, init: &[ComplexMatrix; 3], grid: Grid, bound: f64) -> Result<NahmData> {
    check_init(&spec, init)?;
    let h = grid.h();
    let mut cur = init.clone();
    let mut out: [Vec<ComplexMatrix>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for i in 0..=grid.n {
        if let Some(norm) = blown_up(&cur, bound) {
            return Err(Error::BlowUp { s: grid.node(i), norm });
        }
        for (o, m) in out.iter_mut().zip(&cur) {
            o.push(m.clone());
        }
        if i < grid.n {
            cur = rk4_nahm_step(&cur, h, &spec);
        }
    }
    let [a, b, c] = out;
    let zero = AlgebraPath::zeros(grid, spec.dim);
    Ok(NahmData::assemble(
        spec,
        [zero, AlgebraPath::new(grid, a)?, AlgebraPath::new(grid, b)?, AlgebraPath::new(grid, c)?],
    ))
}

/// Endpoint of the flow only, without storing the samples.
fn flow_endpoint(spec: &AlgebraSpec, init: &[ComplexMatrix; 3], grid: Grid, bound: f64) -> Result<[ComplexMatrix; 3]> {
    let h = grid.h();
    let mut cur = init.clone();
    for i in 0..grid.n {
        if let Some(norm) = blown_up(&cur, bound) {
            return Err(Error::BlowUp { s: grid.node(i), norm });
        }
        cur = rk4_nahm_step(&cur, h, spec);
    }
    if let Some(norm) = blown_up(&cur, bound) {
        return Err(Error::BlowUp { s: grid.s1, norm });
    }
    Ok(cur)
}

/// RK4 solution of the Lax equation `Ṫ1 = [T1, T0]` for a prescribed `T0`.
///
/// Returns `(T0, T1)`; the half-step values of `T0` are interpolated.
pub fn integrate_baby(t1_init: &ComplexMatrix, t0: &AlgebraPath) -> Result<(AlgebraPath, AlgebraPath)> {
    if t1_init.dim() != t0.dim() {
        return Err(Error::DimensionMismatch { expected: t0.dim(), found: t1_init.dim() });
    }
    let grid = *t0.grid();
    let h = grid.h();
    let mut cur = t1_init.clone();
    let mut out = Vec::with_capacity(grid.len());
    out.push(cur.clone());
    for i in 0..grid.n {
        let a0 = &t0.values()[i];
        let am = t0.sample(grid.node(i) + 0.5 * h);
        let a1 = &t0.values()[i + 1];
        let k1 = cur.commutator(a0);
        let mut y = cur.clone();
        y.axpy(C64::new(0.5 * h, 0.0), &k1);
        let k2 = y.commutator(&am);
        let mut y = cur.clone();
        y.axpy(C64::new(0.5 * h, 0.0), &k2);
        let k3 = y.commutator(&am);
        let mut y = cur.clone();
        y.axpy(C64::new(h, 0.0), &k3);
        let k4 = y.commutator(a1);
        let mut incr = k1;
        incr.axpy(C64::new(2.0, 0.0), &k2);
        incr.axpy(C64::new(2.0, 0.0), &k3);
        incr += &k4;
        cur.axpy(C64::new(h / 6.0, 0.0), &incr);
        out.push(cur.clone());
    }
    Ok((t0.clone(), AlgebraPath::new(grid, out)?))
}

/// `T0 = 0`, `T_i(s) = σ(e_i)/(s + offset)`.
pub fn nil_solution(sigma: &Su2Triple, offset: f64, grid: Grid) -> Result<NahmData> {
    if grid.s0 + offset <= 0.0 {
        return Err(Error::InvalidArgument("nil solution needs s0 + offset > 0"));
    }
    let spec = AlgebraSpec::su(sigma.dim());
    let comp = |m: &ComplexMatrix| AlgebraPath::from_fn(grid, |s| m.scale_re(1.0 / (s + offset)));
    NahmData::new(spec, [AlgebraPath::zeros(grid, spec.dim), comp(&sigma.e1), comp(&sigma.e2), comp(&sigma.e3)])
}

/// Closed-form su(2) solution decaying to `(−a·e1, 0, 0)`:
/// `T1 = −a·coth(a x)·e1`, `T2 = a/sinh(a x)·e2`, `T3 = −a/sinh(a x)·e3`
/// with `x = s + offset`.
pub fn coth_solution(a: f64, offset: f64, grid: Grid) -> Result<NahmData> {
    coth_solution_in(&Su2Triple::standard(), a, offset, grid)
}

/// [`coth_solution`] pushed through an su(2) triple `σ`.
pub fn coth_solution_in(sigma: &Su2Triple, a: f64, offset: f64, grid: Grid) -> Result<NahmData> {
    if !(a > 0.0) || !(offset > 0.0) {
        return Err(Error::InvalidArgument("coth solution needs a > 0 and offset > 0"));
    }
    if grid.s0 + offset <= 0.0 {
        return Err(Error::InvalidArgument("coth solution needs s0 + offset > 0"));
    }
    let spec = AlgebraSpec::su(sigma.dim());
    let t1 = AlgebraPath::from_fn(grid, |s| sigma.e1.scale_re(-a / (a * (s + offset)).tanh()));
    let t2 = AlgebraPath::from_fn(grid, |s| sigma.e2.scale_re(a / (a * (s + offset)).sinh()));
    let t3 = AlgebraPath::from_fn(grid, |s| sigma.e3.scale_re(-a / (a * (s + offset)).sinh()));
    NahmData::new(spec, [AlgebraPath::zeros(grid, spec.dim), t1, t2, t3])
}

/// Values `(T1, T2, T3)` at the first node.
pub fn initial_values(d: &NahmData) -> [ComplexMatrix; 3] {
    [1, 2, 3].map(|i| d.component(i).first().clone())
}

/// Boundary data at infinity: `T_i(s) → τ_i + σ(e_i)/(s+1)`, truncated at
/// `s = length`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryTarget {
    pub tau: [ComplexMatrix; 3],
    pub sigma: Option<Su2Triple>,
    pub length: f64,
}

impl BoundaryTarget {
    /// Validates membership in su(k), pairwise commuting `τ_i` and `σ`
    /// commuting with every `τ_i`.
    pub fn new(tau: [ComplexMatrix; 3], sigma: Option<Su2Triple>, length: f64) -> Result<Self> {
        if !(length > 0.0) {
            return Err(Error::InvalidArgument("truncation length must be positive"));
        }
        let spec = AlgebraSpec::su(tau[0].dim());
        for t in &tau {
            spec.check(t)?;
        }
        let scale = tau.iter().map(ComplexMatrix::frobenius_norm).fold(1.0, f64::max);
        for i in 0..3 {
            for j in (i + 1)..3 {
                if tau[i].commutator(&tau[j]).frobenius_norm() > 1e-10 * scale * scale {
                    return Err(Error::InvalidArgument("boundary values must commute"));
                }
            }
        }
        if let Some(s) = &sigma {
            if s.dim() != spec.dim {
                return Err(Error::DimensionMismatch { expected: spec.dim, found: s.dim() });
            }
            for t in &tau {
                for e in s.as_array() {
                    if t.commutator(e).frobenius_norm() > 1e-10 * scale {
                        return Err(Error::InvalidArgument("su(2) image must commute with the boundary values"));
                    }
                }
            }
        }
        Ok(Self { tau, sigma, length })
    }

    pub fn dim(&self) -> usize {
        self.tau[0].dim()
    }

    /// Asymptotic model `τ_i + σ(e_i)/(s + 1)`.
    pub fn model(&self, s: f64) -> [ComplexMatrix; 3] {
        let mut out = self.tau.clone();
        if let Some(sig) = &self.sigma {
            for (o, e) in out.iter_mut().zip(sig.as_array()) {
                o.axpy(C64::new(1.0 / (s + 1.0), 0.0), e);
            }
        }
        out
    }

    /// `τ2 + iτ3`, plus `σ(e2) + iσ(e3)` when a nilpotent part is present.
    pub fn orbit_representative(&self) -> ComplexMatrix {
        let mut m = &self.tau[1] + &self.tau[2].scale(I);
        if let Some(sig) = &self.sigma {
            m += &(&sig.e2 + &sig.e3.scale(I));
        }
        m
    }
}

/// Controls for [`halfline_solve`].
#[derive(Clone, Debug, PartialEq)]
pub struct ShootingOptions {
    /// Grid intervals on `[0, length]`.
    pub intervals: usize,
    pub max_iterations: usize,
    /// Required sup-norm deviation from the model at `s = length`.
    pub tolerance: f64,
    /// Number of truncation lengths `length·j/m` solved in turn.
    pub continuation_stages: usize,
    pub blowup_bound: f64,
    /// Relative forward-difference step of the Jacobian.
    pub fd_step: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            intervals: 2000,
            max_iterations: 30,
            tolerance: 1e-6,
            continuation_stages: 1,
            blowup_bound: DEFAULT_BLOWUP_BOUND,
            fd_step: 1e-7,
        }
    }
}

/// A converged (or best) shooting iterate.
#[derive(Clone, Debug)]
pub struct HalflineSolution {
    pub data: NahmData,
    pub iterations: usize,
    /// Sup-norm deviation of `(T1,T2,T3)(length)` from the model.
    pub terminal_deviation: f64,
    /// Terminal deviation after each Newton iterate of the final stage,
    /// starting with the initial guess.
    pub history: Vec<f64>,
}

#[derive(Clone, Debug)]
pub enum HalflineError {
    /// Iteration budget exhausted; carries the best iterate.
    NonConvergence { best: Box<HalflineSolution> },
    /// The flow from the initial guess blew up before `length`.
    BlowUp { s: f64, norm: f64 },
    Invalid(Error),
}

impl fmt::Display for HalflineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalflineError::NonConvergence { best } => write!(
                f,
                "shooting did not converge after {} iterations (best terminal deviation {:e})",
                best.iterations, best.terminal_deviation
            ),
            HalflineError::BlowUp { s, norm } => write!(f, "flow blew up at s = {s} (norm {norm:e})"),
            HalflineError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for HalflineError {}

impl From<Error> for HalflineError {
    fn from(e: Error) -> Self {
        match e {
            Error::BlowUp { s, norm } => HalflineError::BlowUp { s, norm },
            other => HalflineError::Invalid(other),
        }
    }
}

struct Shooter<'a> {
    spec: AlgebraSpec,
    target: &'a BoundaryTarget,
    grid: Grid,
    bound: f64,
    model: Vec<f64>,
}

impl Shooter<'_> {
    fn unpack(&self, x: &[f64]) -> Result<[ComplexMatrix; 3]> {
        let m = x.len() / 3;
        Ok([
            self.spec.from_coordinates(&x[..m])?,
            self.spec.from_coordinates(&x[m..2 * m])?,
            self.spec.from_coordinates(&x[2 * m..])?,
        ])
    }

    fn pack(&self, t: &[ComplexMatrix; 3]) -> Vec<f64> {
        t.iter().flat_map(|m| self.spec.coordinates(m)).collect()
    }

    fn residual(&self, x: &[f64]) -> Result<Vec<f64>> {
        let end = flow_endpoint(&self.spec, &self.unpack(x)?, self.grid, self.bound)?;
        Ok(self.pack(&end).iter().zip(&self.model).map(|(a, b)| a - b).collect())
    }

    /// Sup-norm of the matrix deviation encoded by a residual vector.
    fn deviation(&self, r: &[f64]) -> Result<f64> {
        let t = self.unpack(r)?;
        Ok(t.iter().map(ComplexMatrix::frobenius_norm).fold(0.0, f64::max))
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Minimum-norm least-squares solution of `J δ = −r` with singular values
/// below `rcond·σ_max` discarded.
fn truncated_step(jac: &[Vec<f64>], r: &[f64], rcond: f64) -> Vec<f64> {
    let rows = jac.len();
    let cols = jac[0].len();
    let gram = ComplexMatrix::from_fn(cols, |a, b| {
        C64::new((0..rows).map(|i| jac[i][a] * jac[i][b]).sum(), 0.0)
    });
    let (vals, vecs) = gram.hermitian_eigen();
    let top = vals.iter().copied().fold(0.0, f64::max);
    let jtr: Vec<f64> = (0..cols).map(|a| (0..rows).map(|i| jac[i][a] * r[i]).sum()).collect();
    let mut step = vec![0.0; cols];
    for (k, &lam) in vals.iter().enumerate() {
        if lam <= top * rcond * rcond || lam <= 0.0 {
            continue;
        }
        let proj: f64 = (0..cols).map(|a| vecs[(a, k)].re * jtr[a]).sum();
        let c = -proj / lam;
        for a in 0..cols {
            step[a] += c * vecs[(a, k)].re;
        }
    }
    step
}

/// Damped Newton shooting on `init ↦ (T1,T2,T3)(length) − model(length)`.
///
/// The Jacobian comes from forward differences. Steps are minimum-norm
/// least-squares solutions with a singular-value cutoff, so directions that
/// the flow contracts by many orders of magnitude are left alone instead of
/// being amplified; rejected steps (growth of the deviation or blow-up) are
/// halved. With `continuation_stages = m > 1` the problem is first solved on
/// `[0, length/m]`, `[0, 2·length/m]`, … and each solution seeds the next.
pub fn halfline_solve(
    target: &BoundaryTarget,
    init_guess: &[ComplexMatrix; 3],
    options: &ShootingOptions,
) -> core::result::Result<HalflineSolution, HalflineError> {
    let spec = AlgebraSpec::su(target.dim());
    check_init(&spec, init_guess)?;
    if options.intervals < 2 || options.continuation_stages == 0 {
        return Err(HalflineError::Invalid(Error::InvalidArgument("need at least 2 intervals and 1 stage")));
    }
    let stages = options.continuation_stages;
    let mut x: Vec<f64> = init_guess.iter().flat_map(|m| spec.coordinates(m)).collect();
    let mut total_iterations = 0;
    for stage in 1..=stages {
        let length = target.length * stage as f64 / stages as f64;
        let intervals = (options.intervals * stage).div_ceil(stages).max(2);
        let grid = Grid::new(0.0, length, intervals)?;
        let mut shooter = Shooter { spec, target, grid, bound: options.blowup_bound, model: Vec::new() };
        shooter.model = shooter.pack(&target.model(length));
        let (xs, iterations, history, dev) = newton(&shooter, x, options)?;
        x = xs;
        total_iterations += iterations;
        let final_stage = stage == stages;
        if dev > options.tolerance || final_stage {
            let data = integrate_nahm(spec, &shooter.unpack(&x)?, Grid::new(0.0, target.length, options.intervals)?, options.blowup_bound)?;
            let solution = HalflineSolution { data, iterations: total_iterations, terminal_deviation: dev, history };
            if dev > options.tolerance {
                return Err(HalflineError::NonConvergence { best: Box::new(solution) });
            }
            return Ok(solution);
        }
    }
    unreachable!("the final stage always returns")
}

type NewtonOutcome = (Vec<f64>, usize, Vec<f64>, f64);

fn newton(shooter: &Shooter<'_>, mut x: Vec<f64>, options: &ShootingOptions) -> core::result::Result<NewtonOutcome, HalflineError> {
    let mut r = shooter.residual(&x)?;
    let mut dev = shooter.deviation(&r)?;
    let mut history = vec![dev];
    let mut iterations = 0;
    while dev > options.tolerance && iterations < options.max_iterations {
        iterations += 1;
        let mut jac = vec![vec![0.0; x.len()]; r.len()];
        for j in 0..x.len() {
            let step = options.fd_step * x[j].abs().max(1.0);
            let mut xp = x.clone();
            xp[j] += step;
            let rp = match shooter.residual(&xp) {
                Ok(v) => v,
                Err(_) => return Err(HalflineError::NonConvergence { best: Box::new(best_of(shooter, &x, iterations, &history, dev, options)?) }),
            };
            for i in 0..r.len() {
                jac[i][j] = (rp[i] - r[i]) / step;
            }
        }
        let delta = truncated_step(&jac, &r, 1e-10);
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda > 1e-6 {
            let trial: Vec<f64> = x.iter().zip(&delta).map(|(a, d)| a + lambda * d).collect();
            if let Ok(rt) = shooter.residual(&trial) {
                if norm2(&rt) < norm2(&r) {
                    x = trial;
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        dev = shooter.deviation(&r)?;
        history.push(dev);
        if !accepted {
            break;
        }
    }
    Ok((x, iterations, history, dev))
}

fn best_of(
    shooter: &Shooter<'_>,
    x: &[f64],
    iterations: usize,
    history: &[f64],
    dev: f64,
    options: &ShootingOptions,
) -> Result<HalflineSolution> {
    let grid = Grid::new(0.0, shooter.target.length, options.intervals)?;
    let data = integrate_nahm(shooter.spec, &shooter.unpack(x)?, grid, options.blowup_bound)?;
    Ok(HalflineSolution { data, iterations, terminal_deviation: dev, history: history.to_vec() })
}

/// Characteristic-polynomial comparison of `β(0)` with the target orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport {
    pub charpoly_beta0: Vec<C64>,
    pub charpoly_target: Vec<C64>,
    pub max_coeff_dev: f64,
    pub certified: bool,
}

/// Tolerance on characteristic-polynomial coefficients for certification.
pub const ORBIT_TOL: f64 = 1e-6;

/// Identifies the adjoint orbit of `β(0) = (T2 + iT3)(0)` against the
/// target's representative through characteristic polynomials.
///
/// Data whose terminal deviation from the model exceeds `residual_tol` is
/// rejected: its `β(0)` says nothing about the target.
pub fn orbit_identify(d: &NahmData, target: &BoundaryTarget, residual_tol: f64) -> Result<OrbitReport> {
    if d.spec().family != Family::Su || d.spec().dim != target.dim() {
        return Err(Error::DimensionMismatch { expected: target.dim(), found: d.spec().dim });
    }
    let model = target.model(d.grid().s1);
    let terminal = (1..4)
        .map(|i| d.component(i).last().max_abs_diff(&model[i - 1]))
        .fold(0.0, f64::max);
    if terminal > residual_tol {
        return Err(Error::ResidualTooLarge { residual: terminal, tolerance: residual_tol });
    }
    let beta0 = d.component(2).first() + &d.component(3).first().scale(I);
    let charpoly_beta0 = beta0.charpoly();
    let charpoly_target = target.orbit_representative().charpoly();
    let max_coeff_dev = charpoly_beta0
        .iter()
        .zip(&charpoly_target)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(OrbitReport { charpoly_beta0, charpoly_target, max_coeff_dev, certified: max_coeff_dev <= ORBIT_TOL })
}
