//! The five subcommands. Each loads and validates its configuration, runs,
//! writes its artifacts into the output directory and reports an
//! [`Outcome`].

use std::path::{Path, PathBuf};

use log::{debug, info, warn};
use nahmlab_core::moment::{mu_baby, mu_nahm};
use nahmlab_core::nahm::{halfline_solve, integrate_baby, integrate_nahm, orbit_identify, BoundaryTarget, HalflineError};
use nahmlab_core::spectral::{
    char_coeffs, conservation_check, curve_along, fixed_curve, reality_check, Pencil, ProjectivePoint,
};
use nahmlab_core::symmetric::{coordinate_criterion, FormClass, RealOrbit, UvPoint};
use nahmlab_core::{AlgebraPath, AlgebraSpec, ComplexMatrix, NahmData, Su2Triple};
use serde::Serialize;
use serde_json::json;

use crate::checks::{self, ClosedForm, VergneRow};
use crate::config::{
    self, resolve_init, CheckConfig, EvolveConfig, FlowKind, HalflineConfig, SpectralConfig, TargetSpec,
    VergneConfig,
};
use crate::error::{CliError, Outcome};
use crate::formats::{
    coefficient_csv, complex_to_json, history_csv, matrix_from_json, matrix_to_json, nahm_csv, residual_csv,
    to_json_string, ComplexJson, MatrixJson, NahmDataJson, OrbitReportJson, SpectralJson,
};
use crate::sampling;

/// Common command-line inputs.
#[derive(Clone, Debug)]
pub struct RunArgs {
    pub config: PathBuf,
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: dir.join(name).display().to_string(), source };
    std::fs::create_dir_all(dir).map_err(io)?;
    std::fs::write(dir.join(name), contents).map_err(io)?;
    debug!("wrote {}", dir.join(name).display());
    Ok(())
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), CliError> {
    write(dir, name, &to_json_string(value))
}

pub fn evolve(args: &RunArgs) -> Result<Outcome, CliError> {
    let cfg: EvolveConfig = config::load(&args.config)?;
    let (spec, grid) = cfg.validate()?;
    let mut rng = sampling::rng(args.seed.unwrap_or(cfg.seed));
    let init = resolve_init(&cfg.init, &spec, grid.s0, &mut rng)?;
    let data = match cfg.flow {
        FlowKind::Nahm => integrate_nahm(spec, &init, grid, cfg.blowup_bound)?,
        FlowKind::Baby => {
            let connection = matrix_from_json(cfg.connection.as_ref().expect("validated"))?;
            spec.check(&connection)?;
            let (t0, t1) = integrate_baby(&init[0], &AlgebraPath::constant(grid, &connection))?;
            let baby = mu_baby(&t0, &t1)?.values().iter().map(ComplexMatrix::frobenius_norm).fold(0.0, f64::max);
            debug!("baby residual {baby:.3e}");
            let zero = AlgebraPath::zeros(grid, spec.dim);
            NahmData::new(spec, [t0, t1, zero.clone(), zero])?
        }
    };
    // With T2 = T3 = 0 the first Nahm residual is the baby residual and the
    // other two vanish, so one residual file serves both flows.
    let residual = mu_nahm(&data);
    let max = residual.max_sup();
    let pass = max <= cfg.residual_bound;
    info!("evolve: residual {max:.3e} (bound {:.1e})", cfg.residual_bound);
    write_json(&args.out_dir, "solution.json", &NahmDataJson::from(&data))?;
    write(&args.out_dir, "solution.csv", &nahm_csv(&data))?;
    write(&args.out_dir, "residual.csv", &residual_csv(&grid, &residual))?;
    write_json(
        &args.out_dir,
        "report.json",
        &json!({ "max_residual": max, "residual_bound": cfg.residual_bound, "pass": pass }),
    )?;
    Ok(Outcome::from_pass(pass))
}

fn point_json(p: &ProjectivePoint) -> serde_json::Value {
    match p {
        ProjectivePoint::Finite(z) => json!(complex_to_json(*z)),
        ProjectivePoint::Infinity => json!("infinity"),
    }
}

fn tau_from_json(tau: &[MatrixJson; 3]) -> Result<[ComplexMatrix; 3], CliError> {
    Ok([matrix_from_json(&tau[0])?, matrix_from_json(&tau[1])?, matrix_from_json(&tau[2])?])
}

pub fn spectral(args: &RunArgs) -> Result<Outcome, CliError> {
    let cfg: SpectralConfig = config::load(&args.config)?;
    match cfg {
        SpectralConfig::Flow { algebra, grid, init, drift_bound, reality_bound, blowup_bound, seed } => {
            let spec = algebra.to_spec()?;
            let grid = grid.to_grid()?;
            let mut rng = sampling::rng(args.seed.unwrap_or(seed));
            let init = resolve_init(&init, &spec, grid.s0, &mut rng)?;
            let data = integrate_nahm(spec, &init, grid, blowup_bound)?;
            let curves = curve_along(&data);
            let drift = conservation_check(&data);
            let reality = curves.iter().map(reality_check).fold(0.0, f64::max);
            let degree_excess = curves.iter().map(|c| c.degree_excess).fold(0.0, f64::max);
            let pass = drift <= drift_bound && reality <= reality_bound;
            info!("spectral: drift {drift:.3e}, reality {reality:.3e}");
            write_json(&args.out_dir, "spectral.json", &SpectralJson::from(&curves[0]))?;
            write(&args.out_dir, "coefficients.csv", &coefficient_csv(&grid, &curves))?;
            write_json(
                &args.out_dir,
                "report.json",
                &json!({
                    "drift": drift,
                    "drift_bound": drift_bound,
                    "reality": reality,
                    "reality_bound": reality_bound,
                    "degree_excess": degree_excess,
                    "pass": pass,
                }),
            )?;
            Ok(Outcome::from_pass(pass))
        }
        SpectralConfig::FixedCurve { tau, reality_bound } => {
            let target = BoundaryTarget::new(tau_from_json(&tau)?, None, 1.0)?;
            let curve = fixed_curve(&target);
            let reality = reality_check(&curve.data);
            let intersections: Vec<_> = curve
                .intersections()
                .iter()
                .map(|(i, j, pts)| json!({ "components": [i, j], "points": pts.iter().map(point_json).collect::<Vec<_>>() }))
                .collect();
            let pass = reality <= reality_bound;
            write_json(&args.out_dir, "spectral.json", &SpectralJson::from(&curve.data))?;
            write_json(
                &args.out_dir,
                "report.json",
                &json!({
                    "reality": reality,
                    "reality_bound": reality_bound,
                    "intersections": intersections,
                    "pass": pass,
                }),
            )?;
            Ok(Outcome::from_pass(pass))
        }
        SpectralConfig::Pencil { alpha, beta, drop_quadratic, reality_bound } => {
            let (alpha, beta) = (matrix_from_json(&alpha)?, matrix_from_json(&beta)?);
            if alpha.dim() != beta.dim() {
                return Err(CliError::config("alpha and beta must have the same size"));
            }
            let pencil = if drop_quadratic { Pencil::without_quadratic(alpha, beta) } else { Pencil::new(alpha, beta) };
            let curve = char_coeffs(&pencil);
            let reality = reality_check(&curve);
            let pass = reality <= reality_bound;
            info!("spectral: pencil reality {reality:.3e}");
            write_json(&args.out_dir, "spectral.json", &SpectralJson::from(&curve))?;
            write_json(
                &args.out_dir,
                "report.json",
                &json!({ "reality": reality, "reality_bound": reality_bound, "pass": pass }),
            )?;
            Ok(Outcome::from_pass(pass))
        }
    }
}

fn boundary_target(t: &TargetSpec, length: f64) -> Result<BoundaryTarget, CliError> {
    Ok(match t {
        TargetSpec::Coth { a } => {
            let e = Su2Triple::standard();
            let zero = ComplexMatrix::zeros(2);
            BoundaryTarget::new([e.e1.scale_re(-a), zero.clone(), zero], None, length)?
        }
        TargetSpec::Nil { dim } => {
            if *dim < 2 {
                return Err(CliError::config("nil target needs dim ≥ 2"));
            }
            let zero = ComplexMatrix::zeros(*dim);
            BoundaryTarget::new([zero.clone(), zero.clone(), zero], Some(Su2Triple::irreducible(*dim)), length)?
        }
        TargetSpec::Custom { tau, irreducible_sigma } => {
            let tau = tau_from_json(tau)?;
            let sigma = irreducible_sigma.then(|| Su2Triple::irreducible(tau[0].dim()));
            BoundaryTarget::new(tau, sigma, length)?
        }
    })
}

pub fn halfline(args: &RunArgs) -> Result<Outcome, CliError> {
    let cfg: HalflineConfig = config::load(&args.config)?;
    let options = cfg.options()?;
    let target = boundary_target(&cfg.target, cfg.length)?;
    let spec = AlgebraSpec::su(target.dim());
    let mut rng = sampling::rng(args.seed.unwrap_or(cfg.seed));
    let guess = resolve_init(&cfg.guess, &spec, 0.0, &mut rng)?;
    let guess = sampling::perturb(&spec, &guess, cfg.perturbation, &mut rng);
    let solution = match halfline_solve(&target, &guess, &options) {
        Ok(s) => s,
        Err(HalflineError::NonConvergence { best }) => {
            warn!("halfline: no convergence, best deviation {:.3e}", best.terminal_deviation);
            write_json(&args.out_dir, "solution.json", &NahmDataJson::from(&best.data))?;
            write(&args.out_dir, "history.csv", &history_csv(&best.history))?;
            return Err(CliError::NonConvergence(format!(
                "terminal deviation {:.3e} after {} iterations",
                best.terminal_deviation, best.iterations
            )));
        }
        Err(e) => return Err(e.into()),
    };
    info!(
        "halfline: converged in {} iterations, deviation {:.3e}",
        solution.iterations, solution.terminal_deviation
    );
    let report = orbit_identify(&solution.data, &target, cfg.residual_tol)?;
    write_json(&args.out_dir, "solution.json", &NahmDataJson::from(&solution.data))?;
    write(&args.out_dir, "history.csv", &history_csv(&solution.history))?;
    write_json(
        &args.out_dir,
        "orbit_report.json",
        &json!({
            "iterations": solution.iterations,
            "terminal_deviation": solution.terminal_deviation,
            "orbit": OrbitReportJson::from(&report),
        }),
    )?;
    Ok(Outcome::from_pass(report.certified))
}

fn orbit_name(o: RealOrbit) -> &'static str {
    match o {
        RealOrbit::Plus => "plus",
        RealOrbit::Minus => "minus",
        RealOrbit::NotReal => "not_real",
    }
}

#[derive(Serialize)]
struct VergneSample {
    u: ComplexJson,
    v: ComplexJson,
    expected: &'static str,
    orbit: &'static str,
    image: MatrixJson,
    form: &'static str,
    b: Option<ComplexJson>,
    transitivity: Option<[usize; 2]>,
    misclassified: bool,
}

impl From<&VergneRow> for VergneSample {
    fn from(r: &VergneRow) -> Self {
        let (form, b) = match r.form {
            FormClass::Plus(b) => ("plus", Some(complex_to_json(b))),
            FormClass::Minus(b) => ("minus", Some(complex_to_json(b))),
            FormClass::Neither => ("neither", None),
        };
        Self {
            u: complex_to_json(r.point.u),
            v: complex_to_json(r.point.v),
            expected: orbit_name(r.expected),
            orbit: orbit_name(r.orbit),
            image: matrix_to_json(&r.image),
            form,
            b,
            transitivity: r.transitivity.map(|(a, b)| [a, b]),
            misclassified: r.misclassified(),
        }
    }
}

pub fn vergne(args: &RunArgs) -> Result<Outcome, CliError> {
    let cfg: VergneConfig = config::load(&args.config)?;
    cfg.validate()?;
    let mut rows = match &cfg.random {
        Some(r) => checks::vergne_sweep(args.seed.unwrap_or(cfg.seed), r.plus, r.minus, r.radius)?,
        None => Vec::new(),
    };
    for x in &cfg.points {
        let p = UvPoint::from_quaternion(*x)?;
        let expected = coordinate_criterion(&p).unwrap_or(RealOrbit::NotReal);
        rows.push(checks::vergne_row(p, expected)?);
    }
    let misclassified = rows.iter().filter(|r| r.misclassified()).count();
    let transitive = rows.iter().all(VergneRow::transitive);
    let pass = misclassified == 0 && transitive;
    info!("vergne: {} samples, {misclassified} misclassified", rows.len());
    let samples: Vec<VergneSample> = rows.iter().map(VergneSample::from).collect();
    write_json(
        &args.out_dir,
        "vergne.json",
        &json!({
            "samples": samples,
            "misclassified": misclassified,
            "transitivity_equal": transitive,
            "pass": pass,
        }),
    )?;
    Ok(Outcome::from_pass(pass))
}

/// One entry of the check summary: `max_error` must not exceed `tolerance`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Expected convergence order, for discretization errors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    /// Error at `2n` and `log2` of the reduction, in convergence mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_order: Option<f64>,
}

/// Length of the conservation run in the check suite; long enough that the
/// drift sits well above roundoff.
const CONSERVATION_LENGTH: f64 = 5.0;

/// Discretization errors as functions of the grid size: name, order, the
/// constant `C` of the tolerance `C·h^order` and the interval length.
type Measured = (&'static str, u32, f64, f64, Box<dyn Fn(usize) -> Result<f64, CliError>>);

fn discretization_checks(seed: u64, samples: usize) -> Vec<Measured> {
    let form = |f: ClosedForm| move |n| Ok(checks::closed_form_residual(f, n)?);
    vec![
        ("closed_form_nil", 2, 5.0, 1.0, Box::new(form(checks::NIL))),
        ("closed_form_coth", 2, 5.0, 1.0, Box::new(form(checks::COTH))),
        (
            "conservation_coth",
            4,
            1.0,
            CONSERVATION_LENGTH,
            Box::new(|n| Ok(checks::conservation_drift(checks::COTH, CONSERVATION_LENGTH, n)?)),
        ),
        ("equivariance", 2, 2000.0, 1.0, Box::new(move |n| Ok(checks::equivariance_defect(seed, samples, n)?))),
        (
            "monodromy_invariance",
            4,
            200.0,
            1.0,
            Box::new(move |n| Ok(checks::monodromy_invariance(seed, samples, n)?)),
        ),
    ]
}

fn run_suite(cfg: &CheckConfig, seed: u64) -> Result<Vec<CheckEntry>, CliError> {
    let (n, m) = (cfg.n, cfg.samples);
    let mut out = Vec::new();
    let mut plain = |name, max_error: f64, tolerance| {
        debug!("check {name}: {max_error:.3e}");
        out.push(CheckEntry {
            name,
            max_error,
            tolerance,
            pass: max_error <= tolerance,
            order: None,
            refined_error: None,
            observed_order: None,
        })
    };
    plain("hamiltonian", checks::hamiltonian_max(seed, m, n, cfg.inject_sign_flip)?, 1e-5);
    let (bilinear, circle) = checks::kahler_max(seed, m, n)?;
    plain("kahler_bilinear", bilinear, 1e-12);
    plain("kahler_circle", circle, 1e-12);
    let q = checks::quotient_checks(seed, m, n)?;
    plain("quotient_constant", q.constant, 1e-8);
    plain("quotient_vertical", q.vertical, 1e-8);
    plain("quotient_invariance", q.invariance, 1e-8);
    plain("complex_factorization", checks::complex_factorization_max(seed, m, n)?, 1e-6);
    let r = checks::reality_sweep(seed, m, n.min(50))?;
    plain("reality", r.worst_real, 1e-9);
    // The control must fail: record how far below the required violation it stays.
    plain("reality_control_shortfall", (1e-2 - r.weakest_control).max(0.0), 0.0);
    let rows = checks::vergne_sweep(seed, m, m, 2.0)?;
    plain("vergne_misclassified", rows.iter().filter(|r| r.misclassified()).count() as f64, 0.0);
    plain("vergne_transitivity", rows.iter().filter(|r| !r.transitive()).count() as f64, 0.0);
    let [so, block] = checks::gk_leakage(seed, n)?;
    plain("gk_leakage_orthogonal", so, 1e-10);
    plain("gk_leakage_block", block, 1e-10);
    plain("trivialization_unitarity", checks::trivialization_unitarity(seed, m, n)?, 1e-10);

    for (name, order, constant, length, f) in discretization_checks(seed, m) {
        let max_error = f(n)?;
        let tolerance = constant * (length / n as f64).powi(order as i32);
        let mut entry = CheckEntry {
            name,
            max_error,
            tolerance,
            pass: max_error <= tolerance,
            order: Some(order),
            refined_error: None,
            observed_order: None,
        };
        if cfg.convergence {
            let fine = f(2 * n)?;
            let observed = checks::observed_order(max_error, fine);
            // The error must shrink by 2^order within a factor of 2.
            entry.pass &= (observed - order as f64).abs() <= 1.0;
            entry.refined_error = Some(fine);
            entry.observed_order = Some(observed);
        }
        debug!("check {name}: {max_error:.3e}");
        out.push(entry);
    }
    Ok(out)
}

pub fn check(args: &RunArgs) -> Result<Outcome, CliError> {
    let cfg: CheckConfig = config::load(&args.config)?;
    cfg.validate()?;
    let seed = args.seed.unwrap_or(cfg.seed);
    let entries = run_suite(&cfg, seed)?;
    let pass = entries.iter().all(|e| e.pass);
    for e in entries.iter().filter(|e| !e.pass) {
        warn!("check {} failed: {:.3e} > {:.3e}", e.name, e.max_error, e.tolerance);
    }
    write_json(
        &args.out_dir,
        "summary.json",
        &json!({
            "seed": seed,
            "n": cfg.n,
            "samples": cfg.samples,
            "convergence": cfg.convergence,
            "inject_sign_flip": cfg.inject_sign_flip,
            "checks": entries,
            "pass": pass,
        }),
    )?;
    Ok(Outcome::from_pass(pass))
}
