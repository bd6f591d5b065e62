//! Stochastic rotations of a two-level system, `E_k = exp(iθ_k σ_x)`.

use crate::channels::{RandomUnitaryChannel, UnitaryRealization};
use crate::error::{invalid_input, Result};
use crate::matrix::{Complex64, ComplexMatrix};

use super::NoiseEnsemble;

/// `[[cos θ, i sin θ], [i sin θ, cos θ]]`.
pub fn two_level_kraus(theta: f64) -> UnitaryRealization {
    let (s, c) = theta.sin_cos();
    let entries = [
        Complex64::new(c, 0.0),
        Complex64::new(0.0, s),
        Complex64::new(0.0, s),
        Complex64::new(c, 0.0),
    ];
    let m = ComplexMatrix::from_row_slice(2, 2, &entries).expect("finite 2x2");
    UnitaryRealization::new(m).expect("rotation is unitary")
}

pub fn two_level_channel(ens: &NoiseEnsemble) -> RandomUnitaryChannel {
    let realizations = ens.iter().map(|(l, t)| (l, two_level_kraus(t))).collect();
    RandomUnitaryChannel::new(realizations).expect("ensemble weights are validated")
}

/// `Y = (Σ λ_k cos 2θ_k)² + (Σ λ_k sin 2θ_k)²`, the squared length of the
/// averaged phasor `e^{2iθ_k}`.
pub fn auxiliary_y(ens: &NoiseEnsemble) -> f64 {
    auxiliary_y_weighted(ens.thetas(), ens.lambdas())
}

pub(crate) fn auxiliary_y_weighted(thetas: &[f64], lambdas: &[f64]) -> f64 {
    let (c, s) = thetas.iter().zip(lambdas).fold((0.0, 0.0), |(c, s), (t, l)| {
        (c + l * (2.0 * t).cos(), s + l * (2.0 * t).sin())
    });
    (c * c + s * s).min(1.0)
}

/// Final populations `((1 + X)/2, (1 - X)/2)` with `X = (2p1 - 1)√Y` for the
/// initial state `diag(p1, 1 - p1)`.
pub fn two_level_closed_form(ens: &NoiseEnsemble, p1: f64) -> Result<(f64, f64)> {
    if !(0.5..=1.0).contains(&p1) {
        return Err(invalid_input(format!("p1 must lie in [0.5, 1], got {p1}")));
    }
    let x = (2.0 * p1 - 1.0) * auxiliary_y(ens).sqrt();
    Ok(((1.0 + x) / 2.0, (1.0 - x) / 2.0))
}
