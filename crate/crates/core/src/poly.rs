//! Complex polynomials: evaluation, roots and interpolation on the unit
//! circle.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{C64, ZERO};

/// Horner evaluation of a polynomial given in descending powers.
pub fn eval_descending(coeffs: &[C64], x: C64) -> C64 {
    coeffs.iter().fold(ZERO, |acc, &c| acc * x + c)
}

/// Horner evaluation of a polynomial given in ascending powers.
pub fn eval_ascending(coeffs: &[C64], x: C64) -> C64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
}

/// The `n` roots of unity `exp(2πi m/n)`.
pub fn unit_roots(n: usize) -> Vec<C64> {
    (0..n)
        .map(|m| C64::from_polar(1.0, 2.0 * core::f64::consts::PI * m as f64 / n as f64))
        .collect()
}

/// Ascending coefficients of the polynomial of degree `< n` taking the
/// given values at the `n` roots of unity (inverse DFT).
pub fn interpolate_unit_roots(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    let nodes = unit_roots(n);
    (0..n)
        .map(|r| {
            let s: C64 = values
                .iter()
                .enumerate()
                .map(|(m, &v)| v * nodes[(r * m) % n].conj())
                .sum();
            s / n as f64
        })
        .collect()
}

/// Roots of a polynomial in descending powers (Aberth–Ehrlich iteration).
///
/// Leading zeros are stripped; a constant polynomial has no roots.
pub fn roots(coeffs: &[C64]) -> Vec<C64> {
    let start = coeffs.iter().position(|c| *c != ZERO).unwrap_or(coeffs.len());
    let p = &coeffs[start..];
    if p.len() <= 1 {
        return Vec::new();
    }
    let lead = p[0];
    let p: Vec<C64> = p.iter().map(|&c| c / lead).collect();
    let deg = p.len() - 1;
    let dp: Vec<C64> = p[..deg]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (deg - i) as f64)
        .collect();
    // Cauchy bound for the initial circle.
    let radius = 1.0 + p[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..deg)
        .map(|m| C64::from_polar(radius * 0.5, 2.0 * core::f64::consts::PI * (m as f64 + 0.25) / deg as f64 + 0.4))
        .collect();
    let mut done = vec![false; deg];
    for _ in 0..500 {
        let mut all = true;
        for i in 0..deg {
            if done[i] {
                continue;
            }
            let pv = eval_descending(&p, z[i]);
            if pv == ZERO {
                done[i] = true;
                continue;
            }
            let ratio = pv / eval_descending(&dp, z[i]);
            let repulsion: C64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == ZERO {
                        ZERO
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                done[i] = true;
                continue;
            }
            z[i] -= step;
            if step.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn roots_of_cubic() {
        // (x−1)(x+2)(x−i)
        let r = [c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 1.0)];
        let coeffs = [c(1.0, 0.0), -(r[0] + r[1] + r[2]), r[0] * r[1] + r[1] * r[2] + r[0] * r[2], -(r[0] * r[1] * r[2])];
        let found = roots(&coeffs);
        for want in r {
            assert!(found.iter().any(|z| (z - want).norm() < 1e-12), "{want}");
        }
    }

    #[test]
    fn double_root_is_found_to_half_precision() {
        let found = roots(&[c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(found.len(), 2);
        assert!(found.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-7));
        assert!(roots(&[c(0.0, 0.0), c(3.0, 0.0)]).is_empty());
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let coeffs = [c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(4.0, -1.0), ZERO];
        let nodes = unit_roots(coeffs.len());
        let values: Vec<C64> = nodes.iter().map(|&z| eval_ascending(&coeffs, z)).collect();
        let back = interpolate_unit_roots(&values);
        for (a, b) in back.iter().zip(coeffs) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
