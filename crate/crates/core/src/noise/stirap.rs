//! Noisy STIRAP transfer `U(θ, α)` on a three-level system.

use serde::{Deserialize, Serialize};

use crate::channels::{RandomUnitaryChannel, UnitaryRealization};
use crate::error::{invalid_input, Result};
use crate::matrix::{Complex64, ComplexMatrix};

use super::NoiseEnsemble;

/// ```text
/// ⎡ cos θ cos α   cos θ sin α   -sin θ ⎤
/// ⎢   -sin α         cos α         0   ⎥
/// ⎣ sin θ cos α   sin θ sin α    cos θ ⎦
/// ```
pub fn stirap_unitary(theta: f64, alpha: f64) -> Result<UnitaryRealization> {
    if !(theta.is_finite() && alpha.is_finite()) {
        return Err(invalid_input("STIRAP angles must be finite"));
    }
    let (st, ct) = theta.sin_cos();
    let (sa, ca) = alpha.sin_cos();
    let entries = [ct * ca, ct * sa, -st, -sa, ca, 0.0, st * ca, st * sa, ct];
    let m = ComplexMatrix::from_row_slice(3, 3, &entries.map(|x| Complex64::new(x, 0.0)))?;
    UnitaryRealization::new(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoisyParameter {
    Theta,
    Alpha,
}

impl NoisyParameter {
    pub fn name(self) -> &'static str {
        match self {
            NoisyParameter::Theta => "theta",
            NoisyParameter::Alpha => "alpha",
        }
    }
}

/// Which angle fluctuates, and the value of the other one.
///
/// The fluctuating angle's stored value is ignored when building channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StirapParams {
    pub theta: f64,
    pub alpha: f64,
    pub noisy: NoisyParameter,
}

impl StirapParams {
    /// Scatter configurations: `cos α = √(1/3)` with noisy θ, or
    /// `cos θ = √(7/10)` with noisy α.
    pub fn scatter_default(noisy: NoisyParameter) -> Self {
        match noisy {
            NoisyParameter::Theta => Self {
                theta: 0.0,
                alpha: (1.0f64 / 3.0).sqrt().acos(),
                noisy,
            },
            NoisyParameter::Alpha => Self {
                theta: 0.7f64.sqrt().acos(),
                alpha: 0.0,
                noisy,
            },
        }
    }

    /// Overrides the fixed (non-fluctuating) angle.
    pub fn with_fixed_angle(mut self, angle: f64) -> Self {
        match self.noisy {
            NoisyParameter::Theta => self.alpha = angle,
            NoisyParameter::Alpha => self.theta = angle,
        }
        self
    }
}

/// Realizations `(λ_k, U(θ_k, α))` or `(λ_k, U(θ, α_k))`.
pub fn stirap_channel(params: &StirapParams, ens: &NoiseEnsemble) -> Result<RandomUnitaryChannel> {
    let realizations = ens
        .iter()
        .map(|(l, angle)| {
            let u = match params.noisy {
                NoisyParameter::Theta => stirap_unitary(angle, params.alpha)?,
                NoisyParameter::Alpha => stirap_unitary(params.theta, angle)?,
            };
            Ok((l, u))
        })
        .collect::<Result<Vec<_>>>()?;
    RandomUnitaryChannel::new(realizations)
}
