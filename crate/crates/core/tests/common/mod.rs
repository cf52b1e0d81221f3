#![allow(dead_code)]

use std::f64::consts::PI;

use nahmlab_core::{AlgebraPath, AlgebraSpec, ComplexMatrix, Grid, NahmData, TangentVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(spec: &AlgebraSpec, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let c: Vec<f64> = (0..spec.real_dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
    spec.from_coordinates(&c).unwrap()
}

pub fn random_matrix(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Smooth path `A + B·s + C·sin(πs)` with random coefficients.
pub fn random_path(spec: &AlgebraSpec, grid: Grid, rng: &mut ChaCha8Rng) -> AlgebraPath {
    let [a, b, c] = [0, 1, 2].map(|_| random_element(spec, rng));
    let (s0, len) = (grid.s0, grid.s1 - grid.s0);
    AlgebraPath::from_fn(grid, |s| {
        let x = (s - s0) / len;
        let mut m = a.clone();
        m.axpy(C64::new(x, 0.0), &b);
        m.axpy(C64::new((PI * x).sin(), 0.0), &c);
        m
    })
}

/// Smooth path vanishing at both ends.
pub fn random_based_path(spec: &AlgebraSpec, grid: Grid, rng: &mut ChaCha8Rng) -> AlgebraPath {
    let [a, b] = [0, 1].map(|_| random_element(spec, rng));
    let (s0, len) = (grid.s0, grid.s1 - grid.s0);
    AlgebraPath::from_fn(grid, |s| {
        let x = (s - s0) / len;
        let mut m = a.scale_re((PI * x).sin());
        m.axpy(C64::new((2.0 * PI * x).sin() * x, 0.0), &b);
        m
    })
}

pub fn random_data(spec: &AlgebraSpec, grid: Grid, rng: &mut ChaCha8Rng) -> NahmData {
    NahmData::new(*spec, [0, 1, 2, 3].map(|_| random_path(spec, grid, rng))).unwrap()
}

pub fn random_tangent(spec: &AlgebraSpec, grid: Grid, rng: &mut ChaCha8Rng) -> TangentVector {
    TangentVector::new([0, 1, 2, 3].map(|_| random_path(spec, grid, rng))).unwrap()
}
