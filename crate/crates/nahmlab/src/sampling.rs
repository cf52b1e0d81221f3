//! Seeded random inputs. Every generator draws from a ChaCha stream, so a
//! seed fixes the whole sample.

use std::f64::consts::PI;

use nahmlab_core::symmetric::UvPoint;
use nahmlab_core::{AlgebraPath, AlgebraSpec, ComplexMatrix, Grid, NahmData, TangentVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform coordinates in `[−scale, scale]` in the orthonormal basis.
pub fn element(spec: &AlgebraSpec, scale: f64, rng: &mut SampleRng) -> ComplexMatrix {
    let c: Vec<f64> = (0..spec.real_dim()).map(|_| scale * rng.random_range(-1.0..1.0)).collect();
    spec.from_coordinates(&c).expect("coordinate count matches the basis")
}

/// Smooth path `A + B·x + C·sin(πx)` with `x` the normalized parameter.
pub fn path(spec: &AlgebraSpec, grid: Grid, scale: f64, rng: &mut SampleRng) -> AlgebraPath {
    let [a, b, c] = [0, 1, 2].map(|_| element(spec, scale, rng));
    let (s0, len) = (grid.s0, grid.s1 - grid.s0);
    AlgebraPath::from_fn(grid, |s| {
        let x = (s - s0) / len;
        let mut m = a.clone();
        m.axpy(C64::new(x, 0.0), &b);
        m.axpy(C64::new((PI * x).sin(), 0.0), &c);
        m
    })
}

/// Smooth path vanishing at both endpoints, a generator of based gauges.
pub fn based_path(spec: &AlgebraSpec, grid: Grid, scale: f64, rng: &mut SampleRng) -> AlgebraPath {
    let [a, b] = [0, 1].map(|_| element(spec, scale, rng));
    let (s0, len) = (grid.s0, grid.s1 - grid.s0);
    AlgebraPath::from_fn(grid, |s| {
        let x = (s - s0) / len;
        let mut m = a.scale_re((PI * x).sin());
        m.axpy(C64::new(x * (2.0 * PI * x).sin(), 0.0), &b);
        m
    })
}

pub fn data(spec: &AlgebraSpec, grid: Grid, scale: f64, rng: &mut SampleRng) -> NahmData {
    let comps = [0, 1, 2, 3].map(|_| path(spec, grid, scale, rng));
    NahmData::new(*spec, comps).expect("sampled paths are in the algebra")
}

pub fn tangent(spec: &AlgebraSpec, grid: Grid, scale: f64, rng: &mut SampleRng) -> TangentVector {
    let comps = [0, 1, 2, 3].map(|_| path(spec, grid, scale, rng));
    TangentVector::new(comps).expect("sampled paths share a grid")
}

/// Initial triple with uniform coordinates.
pub fn triple(spec: &AlgebraSpec, scale: f64, rng: &mut SampleRng) -> [ComplexMatrix; 3] {
    [0, 1, 2].map(|_| element(spec, scale, rng))
}

/// Multiplies every coordinate by `1 + rel·u`, `u` uniform in `[−1, 1]`.
pub fn perturb(spec: &AlgebraSpec, init: &[ComplexMatrix; 3], rel: f64, rng: &mut SampleRng) -> [ComplexMatrix; 3] {
    init.clone().map(|m| {
        let c: Vec<f64> = spec.coordinates(&m).iter().map(|x| x * (1.0 + rel * rng.random_range(-1.0..1.0))).collect();
        spec.from_coordinates(&c).expect("coordinate count matches the basis")
    })
}

fn planar(radius: f64, rng: &mut SampleRng) -> (f64, f64) {
    // Keep away from the origin, where (u, v) degenerates.
    let r = radius * rng.random_range(0.05..1.0);
    let phi = rng.random_range(0.0..2.0 * PI);
    (r * phi.cos(), r * phi.sin())
}

/// Point of the plus real orbit: `x1 = x3 = 0`, so `u, v` are real.
pub fn plus_point(radius: f64, rng: &mut SampleRng) -> UvPoint {
    let (a, b) = planar(radius, rng);
    UvPoint::from_quaternion([a, 0.0, b, 0.0]).expect("nonzero sample")
}

/// Point of the minus real orbit: `x0 = x2 = 0`, so `u, v` are imaginary.
pub fn minus_point(radius: f64, rng: &mut SampleRng) -> UvPoint {
    let (a, b) = planar(radius, rng);
    UvPoint::from_quaternion([0.0, a, 0.0, b]).expect("nonzero sample")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_fix_the_stream() {
        let spec = AlgebraSpec::su(3);
        let a = element(&spec, 1.0, &mut rng(5));
        let b = element(&spec, 1.0, &mut rng(5));
        assert_eq!(a, b);
        assert_ne!(a, element(&spec, 1.0, &mut rng(6)));
        assert!(spec.contains(&a));
    }

    #[test]
    fn based_paths_vanish_at_the_ends() {
        let spec = AlgebraSpec::su(2);
        let p = based_path(&spec, Grid::new(0.0, 2.0, 10).unwrap(), 1.0, &mut rng(1));
        assert!(p.first().frobenius_norm() < 1e-15);
        assert!(p.last().frobenius_norm() < 1e-14);
    }
}
