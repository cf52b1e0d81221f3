mod common;

use common::rng;
use nahmlab_core::nahm::{coth_solution, halfline_solve, initial_values, nil_solution, orbit_identify, BoundaryTarget, ShootingOptions};
use nahmlab_core::{AlgebraSpec, ComplexMatrix, Grid, Su2Triple};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn perturb(init: &[ComplexMatrix; 3], rel: f64, rng: &mut ChaCha8Rng) -> [ComplexMatrix; 3] {
    let spec = AlgebraSpec::su(init[0].dim());
    init.clone().map(|m| {
        let c: Vec<f64> = spec.coordinates(&m).iter().map(|x| x * (1.0 + rel * rng.random_range(-1.0..1.0))).collect();
        spec.from_coordinates(&c).unwrap()
    })
}

#[test]
fn coth_seed_converges_and_certifies() {
    let (a, offset, length) = (1.0, 10.0, 5.0);
    let exact = coth_solution(a, offset, Grid::new(0.0, length, 2000).unwrap()).unwrap();
    let e = Su2Triple::standard();
    let z = ComplexMatrix::zeros(2);
    let target = BoundaryTarget::new([e.e1.scale_re(-a), z.clone(), z], None, length).unwrap();
    let seed = perturb(&initial_values(&exact), 0.01, &mut rng(7));
    let sol = halfline_solve(&target, &seed, &ShootingOptions::default()).unwrap();
    assert!(sol.terminal_deviation <= 1e-6);
    assert!(orbit_identify(&sol.data, &target, 1e-6).unwrap().certified);
}

#[test]
fn nil_seed_converges_and_certifies() {
    let length = 5.0;
    let sigma = Su2Triple::irreducible(2);
    let exact = nil_solution(&sigma, 1.0, Grid::new(0.0, length, 2000).unwrap()).unwrap();
    let z = ComplexMatrix::zeros(2);
    let target = BoundaryTarget::new([z.clone(), z.clone(), z], Some(sigma), length).unwrap();
    let seed = perturb(&initial_values(&exact), 0.01, &mut rng(11));
    let sol = halfline_solve(&target, &seed, &ShootingOptions::default()).unwrap();
    assert!(sol.terminal_deviation <= 1e-6);
    let report = orbit_identify(&sol.data, &target, 1e-6).unwrap();
    assert!(report.certified);
    // β(0) is nilpotent: every lower coefficient vanishes.
    assert!(report.charpoly_beta0[1..].iter().all(|c| c.norm() < 1e-6));
}

#[test]
fn zero_budget_reports_non_convergence() {
    let length = 3.0;
    let sigma = Su2Triple::irreducible(2);
    let exact = nil_solution(&sigma, 1.0, Grid::new(0.0, length, 500).unwrap()).unwrap();
    let z = ComplexMatrix::zeros(2);
    let target = BoundaryTarget::new([z.clone(), z.clone(), z], Some(sigma), length).unwrap();
    let seed = perturb(&initial_values(&exact), 0.05, &mut rng(3));
    let options = ShootingOptions { max_iterations: 0, intervals: 500, ..ShootingOptions::default() };
    assert!(matches!(
        halfline_solve(&target, &seed, &options),
        Err(nahmlab_core::nahm::HalflineError::NonConvergence { .. })
    ));
}
