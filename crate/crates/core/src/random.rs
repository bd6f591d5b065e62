//! Samplers for simplex weights, Haar unitaries and mixed states.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{invalid_input, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::rng::RngSeed;

/// Flat Dirichlet draw: normalised i.i.d. unit exponentials.
pub fn sample_simplex<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        w.iter_mut().for_each(|x| *x /= total);
    } else {
        // all draws underflowed to zero; practically unreachable
        w.iter_mut().for_each(|x| *x = 1.0 / n as f64);
    }
    w
}

pub fn random_simplex_weights(n: usize, seed: RngSeed) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(invalid_input("simplex dimension must be at least 1"));
    }
    Ok(sample_simplex(n, &mut seed.rng()))
}

/// Uniform angle on `[0, 2π)`.
pub fn sample_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.0..TAU)
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix, with the
/// phases of `R`'s diagonal moved into `Q` so the triangular factor is positive.
pub fn sample_haar<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let ginibre = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal) * FRAC_1_SQRT_2,
            rng.sample::<f64, _>(StandardNormal) * FRAC_1_SQRT_2,
        )
    });
    let qr = ginibre.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for (k, mut col) in q.column_iter_mut().enumerate() {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        col *= phase;
    }
    ComplexMatrix::from_dmatrix_unchecked(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_weight_is_one() {
        assert_eq!(random_simplex_weights(1, RngSeed::from(3)).unwrap(), vec![1.0]);
        assert!(random_simplex_weights(0, RngSeed::from(3)).is_err());
    }

    #[test]
    fn weights_are_deterministic_and_normalised() {
        let a = random_simplex_weights(3, RngSeed::new(11, 2)).unwrap();
        let b = random_simplex_weights(3, RngSeed::new(11, 2)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x >= 0.0));
        assert!((a.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn two_component_mean_is_half() {
        let mut rng = RngSeed::from(5).rng();
        let n = 10_000;
        let mean = (0..n).map(|_| sample_simplex(2, &mut rng)[0]).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn haar_is_unitary_with_positive_r() {
        let mut rng = RngSeed::from(1).rng();
        for dim in 1..=8 {
            let u = sample_haar(dim, &mut rng);
            assert_eq!(u.rows(), dim);
            assert!((&u.adjoint() * &u).identity_defect() <= 1e-10);
        }
    }

    #[test]
    fn haar_scalar_has_unit_modulus() {
        let u = sample_haar(1, &mut RngSeed::from(2).rng());
        assert!((u.get(0, 0).norm() - 1.0).abs() < 1e-14);
    }
}
