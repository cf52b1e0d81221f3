use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every module of the core crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two matrices (or a matrix and an algebra) disagree on size.
    DimensionMismatch { expected: usize, found: usize },
    /// A node-indexed sequence has the wrong number of samples.
    LengthMismatch { expected: usize, found: usize },
    /// Paths live on different grids.
    GridMismatch,
    /// Malformed scalar argument (grid endpoints, offsets, tolerances, ...).
    InvalidArgument(&'static str),
    /// A matrix fails the membership test of its algebra.
    NotInAlgebra { defect: f64 },
    /// Matrix is singular to working precision.
    Singular,
    /// A rotation matrix is not in SO(3).
    NotRotation { defect: f64 },
    /// Input is not on the level set of the moment map.
    LevelSetViolation { defect: f64 },
    /// A Lie-algebra path of G₀ does not vanish at the endpoints.
    BoundaryViolation { value: f64 },
    /// Nahm flow left the configured norm bound.
    BlowUp { s: f64, norm: f64 },
    /// A solution residual is too large to certify a result.
    ResidualTooLarge { residual: f64, tolerance: f64 },
    /// A point or matrix is degenerate for the requested map.
    Degenerate(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected} samples, found {found}")
            }
            Error::GridMismatch => write!(f, "paths are sampled on different grids"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::NotInAlgebra { defect } => {
                write!(f, "matrix is not in the algebra (defect {defect:e})")
            }
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotRotation { defect } => {
                write!(f, "matrix is not a rotation (defect {defect:e})")
            }
            Error::LevelSetViolation { defect } => {
                write!(f, "input violates the level-set equation (defect {defect:e})")
            }
            Error::BoundaryViolation { value } => {
                write!(f, "gauge generator does not vanish at the endpoints ({value:e})")
            }
            Error::BlowUp { s, norm } => write!(f, "flow blew up at s = {s} (norm {norm:e})"),
            Error::ResidualTooLarge { residual, tolerance } => write!(
                f,
                "residual {residual:e} exceeds certification tolerance {tolerance:e}"
            ),
            Error::Degenerate(what) => write!(f, "degenerate input: {what}"),
        }
    }
}

impl core::error::Error for Error {}
