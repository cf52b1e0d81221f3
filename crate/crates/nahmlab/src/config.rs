//! JSON run configurations. Unknown fields are rejected and every value is
//! validated before any computation starts.

use std::path::Path;

use nahmlab_core::nahm::{ShootingOptions, DEFAULT_BLOWUP_BOUND};
use nahmlab_core::{AlgebraSpec, ComplexMatrix, Family, Grid, Su2Triple};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::CliError;
use crate::formats::{matrix_from_json, AlgebraJson, GridJson, MatrixJson};

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

fn positive(value: f64, what: &str) -> Result<(), CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(CliError::config(format!("{what} must be positive and finite")))
    }
}

fn default_blowup() -> f64 {
    DEFAULT_BLOWUP_BOUND
}

/// How the initial triple `(T1, T2, T3)(s0)` is chosen.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitSpec {
    /// `σ(e_i)/(s0 + offset)` with the irreducible su(2) image of size `dim`.
    Nil { offset: f64 },
    /// su(2) coth solution at `s0`.
    Coth { a: f64, offset: f64 },
    Matrices { t1: MatrixJson, t2: MatrixJson, t3: MatrixJson },
    /// Uniform coordinates in `[−scale, scale]`, drawn from the run seed.
    Random { scale: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowKind {
    Nahm,
    Baby,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub algebra: AlgebraJson,
    pub grid: GridJson,
    pub flow: FlowKind,
    /// Nahm flow initial triple; for the baby flow only `t1` is used.
    pub init: InitSpec,
    /// Constant connection `T0` of the baby flow.
    #[serde(default)]
    pub connection: Option<MatrixJson>,
    pub residual_bound: f64,
    #[serde(default = "default_blowup")]
    pub blowup_bound: f64,
    #[serde(default)]
    pub seed: u64,
}

impl EvolveConfig {
    pub fn validate(&self) -> Result<(AlgebraSpec, Grid), CliError> {
        let spec = self.algebra.to_spec()?;
        if spec.family != Family::Su {
            return Err(CliError::config("flows run on su(k)"));
        }
        positive(self.residual_bound, "residual_bound")?;
        positive(self.blowup_bound, "blowup_bound")?;
        if self.flow == FlowKind::Baby && self.connection.is_none() {
            return Err(CliError::config("the baby flow needs a connection matrix"));
        }
        Ok((spec, self.grid.to_grid()?))
    }
}

/// Resolves an [`InitSpec`] at `s0`.
pub fn resolve_init(
    init: &InitSpec,
    spec: &AlgebraSpec,
    s0: f64,
    rng: &mut crate::sampling::SampleRng,
) -> Result<[ComplexMatrix; 3], CliError> {
    let triple = match init {
        InitSpec::Nil { offset } => {
            if s0 + offset <= 0.0 {
                return Err(CliError::config("nil initial data needs s0 + offset > 0"));
            }
            let sigma = Su2Triple::irreducible(spec.dim);
            sigma.as_array().map(|m| m.scale_re(1.0 / (s0 + offset)))
        }
        InitSpec::Coth { a, offset } => {
            if spec.dim != 2 {
                return Err(CliError::config("coth initial data lives in su(2)"));
            }
            positive(*a, "a")?;
            let x = s0 + offset;
            positive(x, "s0 + offset")?;
            let e = Su2Triple::standard();
            [e.e1.scale_re(-a / (a * x).tanh()), e.e2.scale_re(a / (a * x).sinh()), e.e3.scale_re(-a / (a * x).sinh())]
        }
        InitSpec::Matrices { t1, t2, t3 } => [matrix_from_json(t1)?, matrix_from_json(t2)?, matrix_from_json(t3)?],
        InitSpec::Random { scale } => {
            positive(*scale, "scale")?;
            crate::sampling::triple(spec, *scale, rng)
        }
    };
    for m in &triple {
        if m.dim() != spec.dim {
            return Err(CliError::config("initial matrices must match the algebra dimension"));
        }
        spec.check(m)?;
    }
    Ok(triple)
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpectralConfig {
    /// Curves along a Nahm flow: conservation and reality.
    Flow {
        algebra: AlgebraJson,
        grid: GridJson,
        init: InitSpec,
        drift_bound: f64,
        reality_bound: f64,
        #[serde(default = "default_blowup")]
        blowup_bound: f64,
        #[serde(default)]
        seed: u64,
    },
    /// Curve of the constant solution `T_i ≡ τ_i`.
    FixedCurve { tau: [MatrixJson; 3], reality_bound: f64 },
    /// Curve of a single pencil; `drop_quadratic` gives the negative control.
    Pencil {
        alpha: MatrixJson,
        beta: MatrixJson,
        #[serde(default)]
        drop_quadratic: bool,
        reality_bound: f64,
    },
}

/// Preset boundary data at infinity.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetSpec {
    /// `τ = (−a·e1, 0, 0)` in su(2).
    Coth { a: f64 },
    /// `τ = 0` with the irreducible su(2) image of size `dim`.
    Nil { dim: usize },
    Custom {
        tau: [MatrixJson; 3],
        /// Use the irreducible su(2) image as nilpotent part.
        #[serde(default)]
        irreducible_sigma: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShootingJson {
    #[serde(default)]
    pub intervals: Option<usize>,
    #[serde(default)]
    pub max_iterations: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub continuation_stages: Option<usize>,
    #[serde(default)]
    pub fd_step: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalflineConfig {
    pub target: TargetSpec,
    pub length: f64,
    /// Initial guess at `s = 0`.
    pub guess: InitSpec,
    /// Relative coordinate noise added to the guess.
    #[serde(default)]
    pub perturbation: f64,
    #[serde(default)]
    pub shooting: Option<ShootingJson>,
    /// Terminal deviation accepted by the orbit identification.
    pub residual_tol: f64,
    #[serde(default = "default_blowup")]
    pub blowup_bound: f64,
    #[serde(default)]
    pub seed: u64,
}

impl HalflineConfig {
    pub fn options(&self) -> Result<ShootingOptions, CliError> {
        positive(self.length, "length")?;
        positive(self.residual_tol, "residual_tol")?;
        positive(self.blowup_bound, "blowup_bound")?;
        if !(self.perturbation >= 0.0 && self.perturbation.is_finite()) {
            return Err(CliError::config("perturbation must be non-negative"));
        }
        let mut o = ShootingOptions { blowup_bound: self.blowup_bound, ..ShootingOptions::default() };
        if let Some(s) = &self.shooting {
            o.intervals = s.intervals.unwrap_or(o.intervals);
            o.max_iterations = s.max_iterations.unwrap_or(o.max_iterations);
            o.tolerance = s.tolerance.unwrap_or(o.tolerance);
            o.continuation_stages = s.continuation_stages.unwrap_or(o.continuation_stages);
            o.fd_step = s.fd_step.unwrap_or(o.fd_step);
        }
        if o.intervals < 2 || o.continuation_stages == 0 {
            return Err(CliError::config("shooting needs at least 2 intervals and 1 stage"));
        }
        positive(o.tolerance, "shooting.tolerance")?;
        positive(o.fd_step, "shooting.fd_step")?;
        Ok(o)
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSamples {
    pub plus: usize,
    pub minus: usize,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VergneConfig {
    #[serde(default)]
    pub random: Option<RandomSamples>,
    /// Explicit points as quaternion coordinates `[x0, x1, x2, x3]`, with
    /// `u = x0 + i x1`, `v = x2 + i x3`.
    #[serde(default)]
    pub points: Vec<[f64; 4]>,
    #[serde(default)]
    pub seed: u64,
}

impl VergneConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let random = self.random.as_ref().map_or(0, |r| r.plus + r.minus);
        if random + self.points.len() == 0 {
            return Err(CliError::config("the sample set is empty"));
        }
        if let Some(r) = &self.random {
            positive(r.radius, "random.radius")?;
        }
        Ok(())
    }
}

fn default_n() -> usize {
    200
}

fn default_samples() -> usize {
    20
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    /// Grid intervals on `[0, 1]`.
    #[serde(default = "default_n")]
    pub n: usize,
    /// Random configurations per check.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Also run the suite at `2n` and check convergence orders.
    #[serde(default)]
    pub convergence: bool,
    /// Negative control: flip the sign of `ω` in the Hamiltonian check.
    #[serde(default)]
    pub inject_sign_flip: bool,
    #[serde(default)]
    pub seed: u64,
}

impl CheckConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n < 8 || self.samples == 0 {
            return Err(CliError::config("check needs n ≥ 8 and at least one sample"));
        }
        Ok(())
    }
}
