//! Numerical kernels for Nahm's equations on matrix Lie algebras.
//!
//! Everything in this crate is a pure function over small dense complex
//! matrices and node-sampled paths on uniform grids. The crate is `no_std`
//! and only needs `alloc`; file formats, seeded sampling and the command
//! line live in the `nahmlab` crate.
//!
//! Module map:
//!
//! - [`matrix`], [`algebra`]: dense complex matrices, brackets, the invariant
//!   pairing, `expm`, polar decomposition and su(2) embeddings.
//! - [`path`]: grids, quadrature, difference operators, the flat L² metric,
//!   the quaternionic complex structures and the SO(3)/S¹ actions.
//! - [`gauge`]: gauge action, trivialization, monodromy, complex gauge
//!   fixing and horizontal projection.
//! - [`moment`]: moment maps, Hamiltonian identity checks, the S¹ moment map
//!   as Kähler potential, and the Kostant–Kirillov–Souriau form.
//! - [`nahm`]: RK4 integrators, closed-form solutions, Lax extraction and
//!   half-line shooting with orbit identification.
//! - [`spectral`]: the quadratic pencil, spectral-curve coefficients,
//!   conservation and the reality involution.
//! - [`symmetric`]: symmetric-pair splittings and the sl(2) Vergne witness.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
mod banded;
pub mod error;
pub mod gauge;
pub mod matrix;
pub mod moment;
pub mod nahm;
pub mod path;
pub mod poly;
pub mod spectral;
pub mod symmetric;

pub use algebra::{bracket, pairing, su2_embed, AlgebraSpec, Family, Su2Triple};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
pub use path::{AlgebraPath, Grid, NahmData, TangentVector};
