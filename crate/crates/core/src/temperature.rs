//! Effective two-level temperatures.
//!
//! A two-level Gibbs state with gap `ω` and ground population `p` has
//! `p / (1 - p) = exp(ω / (k_B T))`, so `T = ω / (k_B ln(p / (1 - p)))`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Result};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemperatureSpec {
    pub omega: f64,
    #[serde(default = "unit")]
    pub k_b: f64,
}

fn unit() -> f64 {
    1.0
}

impl TemperatureSpec {
    pub fn new(omega: f64, k_b: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(invalid_input(format!("energy gap must be positive, got {omega}")));
        }
        if !(k_b > 0.0 && k_b.is_finite()) {
            return Err(invalid_input(format!("Boltzmann scale must be positive, got {k_b}")));
        }
        Ok(Self { omega, k_b })
    }

    pub fn with_gap(omega: f64) -> Result<Self> {
        Self::new(omega, 1.0)
    }
}

/// Temperature of a two-level population `p1 >= 1/2`.
///
/// Returns `f64::INFINITY` at `p1 = 1/2` and `0` at `p1 = 1`.
pub fn effective_temperature(p1: f64, spec: &TemperatureSpec) -> Result<f64> {
    if !(0.5..=1.0).contains(&p1) {
        return Err(invalid_input(format!(
            "larger population must lie in [0.5, 1], got {p1}"
        )));
    }
    if p1 == 0.5 {
        return Ok(f64::INFINITY);
    }
    if p1 == 1.0 {
        return Ok(0.0);
    }
    let log_ratio = (p1 / (1.0 - p1)).ln();
    Ok(spec.omega / (spec.k_b * log_ratio))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TemperatureReport {
    pub t_initial: f64,
    pub t_final: f64,
    /// `true` when both states share the same gap.
    pub same_gap: bool,
    /// Lower bound on `t_final` implied by `q1 <= p1`: `(ω_f / ω_i) · t_initial`.
    pub bound: f64,
    /// `t_final >= bound - 1e-12`.
    pub holds: bool,
}

pub fn temperature_monotonicity_check(
    p1_initial: f64,
    q1_final: f64,
    spec_initial: &TemperatureSpec,
    spec_final: &TemperatureSpec,
) -> Result<TemperatureReport> {
    let t_initial = effective_temperature(p1_initial, spec_initial)?;
    let t_final = effective_temperature(q1_final, spec_final)?;
    let same_gap = spec_initial.omega == spec_final.omega && spec_initial.k_b == spec_final.k_b;
    let bound = if same_gap {
        t_initial
    } else {
        // k_B cancels only when it is shared; keep it explicit
        (spec_final.omega / spec_final.k_b) / (spec_initial.omega / spec_initial.k_b) * t_initial
    };
    Ok(TemperatureReport {
        t_initial,
        t_final,
        same_gap,
        bound,
        holds: t_final >= bound - tol::TEMPERATURE,
    })
}
