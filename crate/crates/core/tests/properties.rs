mod common;

use common::*;
use nahmlab_core::algebra::pairing;
use nahmlab_core::path::{axis_rotation, complex_structure, l2_metric, omega, s1_action, so3_rotate};
use nahmlab_core::symmetric::{
    classify_real_orbit, coordinate_criterion, kc_orbit_form_check, vergne_map_j, FormClass, RealOrbit,
    SymmetricPairSpec, UvPoint,
};
use nahmlab_core::{AlgebraSpec, ComplexMatrix, Grid, NahmData, TangentVector, C64};
use proptest::prelude::*;

fn grid() -> Grid {
    Grid::new(0.0, 1.0, 24).unwrap()
}

fn as_data(spec: AlgebraSpec, v: &TangentVector) -> NahmData {
    NahmData::new(spec, v.components().clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identity(k in 2usize..=6, seed in any::<u64>()) {
        let spec = AlgebraSpec::su(k);
        let mut r = rng(seed);
        let [x, y, z] = [0, 1, 2].map(|_| random_element(&spec, &mut r));
        let sum = &(&x.commutator(&y.commutator(&z)) + &y.commutator(&z.commutator(&x))) + &z.commutator(&x.commutator(&y));
        let scale = x.frobenius_norm() * y.frobenius_norm() * z.frobenius_norm();
        prop_assert!(sum.frobenius_norm() <= 1e-12 * scale);
    }

    #[test]
    fn pairing_is_symmetric_bilinear_and_positive(k in 2usize..=5, seed in any::<u64>(), a in -3.0f64..3.0) {
        let spec = AlgebraSpec::su(k);
        let mut r = rng(seed);
        let [x, y, z] = [0, 1, 2].map(|_| random_element(&spec, &mut r));
        prop_assert!((pairing(&x, &y) - pairing(&y, &x)).abs() < 1e-13);
        let lin = pairing(&(&x.scale_re(a) + &z), &y) - a * pairing(&x, &y) - pairing(&z, &y);
        prop_assert!(lin.abs() < 1e-12);
        // Gram matrix of a random family is positive definite.
        let family: Vec<ComplexMatrix> = (0..spec.real_dim()).map(|_| random_element(&spec, &mut r)).collect();
        let m = family.len();
        let gram = ComplexMatrix::from_fn(m, |i, j| C64::new(pairing(&family[i], &family[j]), 0.0));
        let (vals, _) = gram.hermitian_eigen();
        prop_assert!(vals[0] > 0.0);
        // ad-invariance
        let lhs = pairing(&x.commutator(&y), &z);
        let rhs = pairing(&x, &y.commutator(&z));
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn expm_of_negative_is_inverse(k in 1usize..=6, seed in any::<u64>(), s in 0.0f64..4.0) {
        let mut r = rng(seed);
        let x = random_element(&AlgebraSpec::su(k.max(2)), &mut r).scale_re(s);
        let id = ComplexMatrix::identity(x.dim());
        prop_assert!((&x.expm() * &x.scale_re(-1.0).expm()).max_abs_diff(&id) <= 1e-10);
        // General matrices of moderate norm.
        let y = random_matrix(k, &mut r).scale_re(s / k as f64);
        let prod = &y.expm() * &y.scale_re(-1.0).expm();
        prop_assert!(prod.max_abs_diff(&ComplexMatrix::identity(k)) <= 1e-10);
    }

    #[test]
    fn polar_reconstructs(k in 1usize..=6, seed in any::<u64>()) {
        let a = &random_matrix(k, &mut rng(seed)) + &ComplexMatrix::identity(k).scale_re(0.1);
        let (u, h) = a.polar_decompose().unwrap();
        let back = &u * &h.scale(C64::new(0.0, 1.0)).expm();
        prop_assert!(back.max_abs_diff(&a) <= 1e-10 * a.frobenius_norm().max(1.0));
        prop_assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(k)) <= 1e-12);
    }

    #[test]
    fn theta_is_an_automorphism_with_orthogonal_split(seed in any::<u64>(), which in 0usize..3) {
        let spec = match which {
            0 => SymmetricPairSpec::orthogonal(2),
            1 => SymmetricPairSpec::orthogonal(4),
            _ => SymmetricPairSpec::block(2, 1).unwrap(),
        };
        let mut r = rng(seed);
        let x = random_element(&spec.base, &mut r);
        let y = random_element(&spec.base, &mut r);
        prop_assert!(spec.automorphism_defect(&x, &y) <= 1e-12);
        let (xk, xm) = spec.split(&x).unwrap();
        prop_assert!(pairing(&xk, &xm).abs() <= 1e-14);
        prop_assert!((&xk + &xm).max_abs_diff(&x) <= 1e-15);
    }

    #[test]
    fn vergne_map_has_no_crossovers(x0 in -2.0f64..2.0, x1 in -2.0f64..2.0, plus in any::<bool>()) {
        prop_assume!(x0.hypot(x1) > 1e-3);
        // Plus points have real (u, v); minus points purely imaginary ones.
        let p = if plus {
            UvPoint::from_quaternion([x0, 0.0, x1, 0.0]).unwrap()
        } else {
            UvPoint::from_quaternion([0.0, x0, 0.0, x1]).unwrap()
        };
        let orbit = classify_real_orbit(&p).unwrap();
        prop_assert_eq!(Some(orbit), coordinate_criterion(&p));
        let form = kc_orbit_form_check(&vergne_map_j(&p).unwrap());
        match orbit {
            RealOrbit::Plus => prop_assert!(matches!(form, FormClass::Plus(_))),
            RealOrbit::Minus => prop_assert!(matches!(form, FormClass::Minus(_))),
            RealOrbit::NotReal => prop_assert!(false, "real point classified as not real"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complex_structures_are_quaternionic_isometries(k in 2usize..=3, seed in any::<u64>()) {
        let spec = AlgebraSpec::su(k);
        let mut r = rng(seed);
        let u = random_tangent(&spec, grid(), &mut r);
        let v = random_tangent(&spec, grid(), &mut r);
        let g = l2_metric(&u, &v).unwrap();
        for i in 1..=3 {
            let iu = complex_structure(i, &u).unwrap();
            let iv = complex_structure(i, &v).unwrap();
            prop_assert!((l2_metric(&iu, &iv).unwrap() - g).abs() <= 1e-12 * g.abs().max(1.0));
            let a = omega(i, &u, &v).unwrap();
            let b = omega(i, &v, &u).unwrap();
            prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1.0));
            let twice = complex_structure(i, &iu).unwrap();
            prop_assert!(twice.add(&u).unwrap().max_abs_diff(&TangentVector::zeros(grid(), k)) == 0.0);
        }
        let i3 = complex_structure(3, &u).unwrap();
        let i2i1 = complex_structure(2, &complex_structure(1, &u).unwrap()).unwrap();
        let i1i2 = complex_structure(1, &complex_structure(2, &u).unwrap()).unwrap();
        prop_assert!(i2i1.max_abs_diff(&i3) == 0.0);
        prop_assert!(i1i2.add(&i3).unwrap().max_abs_diff(&TangentVector::zeros(grid(), k)) == 0.0);
    }

    #[test]
    fn metric_and_first_form_are_rotation_invariant(seed in any::<u64>(), theta in 0.0f64..6.3, axis in 0usize..3) {
        let spec = AlgebraSpec::su(2);
        let mut r = rng(seed);
        let u = random_tangent(&spec, grid(), &mut r);
        let v = random_tangent(&spec, grid(), &mut r);
        let rot = axis_rotation(axis, theta);
        let ru = so3_rotate(&rot, &as_data(spec, &u)).unwrap().to_tangent();
        let rv = so3_rotate(&rot, &as_data(spec, &v)).unwrap().to_tangent();
        let g = l2_metric(&u, &v).unwrap();
        prop_assert!((l2_metric(&ru, &rv).unwrap() - g).abs() <= 1e-12 * g.abs().max(1.0));
        // The circle fixing I₁ rotates (T2, T3).
        let su = s1_action(theta, &as_data(spec, &u)).to_tangent();
        let sv = s1_action(theta, &as_data(spec, &v)).to_tangent();
        let w = omega(1, &u, &v).unwrap();
        prop_assert!((omega(1, &su, &sv).unwrap() - w).abs() <= 1e-12 * w.abs().max(1.0));
    }
}
