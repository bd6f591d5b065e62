//! Concrete classical-noise models.
//!
//! Each model turns a [`NoiseEnsemble`] (angles `θ_k` with probabilities
//! `λ_k`) into a mixture of unitaries.

mod config;
mod resonator;
mod stirap;
pub(crate) mod two_level;

pub use config::{ModelConfig, ModelParams, TwoLevelParams};
pub use resonator::{
    dressed_angle, mr_apply, mr_block_kraus, mr_closed_form, mr_full_unitary, mr_mu, mr_yn, BlockState, MRParams,
};
pub use stirap::{stirap_channel, stirap_unitary, NoisyParameter, StirapParams};
pub use two_level::{auxiliary_y, two_level_channel, two_level_closed_form, two_level_kraus};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Error, Result};
use crate::random::{sample_angle, sample_simplex};
use crate::tol;

/// Noise realizations `θ_k` and their probabilities `λ_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEnsemble")]
pub struct NoiseEnsemble {
    thetas: Vec<f64>,
    lambdas: Vec<f64>,
}

#[derive(Deserialize)]
struct RawEnsemble {
    thetas: Vec<f64>,
    lambdas: Vec<f64>,
}

impl TryFrom<RawEnsemble> for NoiseEnsemble {
    type Error = Error;

    fn try_from(raw: RawEnsemble) -> Result<Self> {
        NoiseEnsemble::new(raw.thetas, raw.lambdas)
    }
}

impl NoiseEnsemble {
    pub fn new(thetas: Vec<f64>, lambdas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(invalid_input("ensemble needs at least one realization"));
        }
        if thetas.len() != lambdas.len() {
            return Err(invalid_input(format!(
                "{} angles but {} probabilities",
                thetas.len(),
                lambdas.len()
            )));
        }
        if let Some(t) = thetas.iter().find(|t| !t.is_finite()) {
            return Err(invalid_input(format!("angle {t} is not finite")));
        }
        if let Some(l) = lambdas.iter().find(|l| !(l.is_finite() && **l >= 0.0)) {
            return Err(invalid_input(format!("probability {l} is negative or not finite")));
        }
        let total: f64 = lambdas.iter().sum();
        if (total - 1.0).abs() > tol::WEIGHT_SUM {
            return Err(invalid_input(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { thetas, lambdas })
    }

    /// Equal weights `1/N`.
    pub fn uniform(thetas: Vec<f64>) -> Result<Self> {
        let n = thetas.len().max(1);
        Self::new(thetas, vec![1.0 / n as f64; n])
    }

    /// `n` angles uniform on `[0, 2π)` with flat-Dirichlet probabilities.
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return Err(invalid_input("ensemble size must be at least 1"));
        }
        let lambdas = sample_simplex(n, rng);
        let thetas = (0..n).map(|_| sample_angle(rng)).collect();
        Self::new(thetas, lambdas)
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.lambdas.iter().copied().zip(self.thetas.iter().copied())
    }
}
