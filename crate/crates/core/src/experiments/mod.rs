//! Seeded Monte Carlo experiments.
//!
//! Trial `i` always draws from the stream `(seed, i)`, so results do not
//! depend on how trials are scheduled across threads. Trials run on the
//! current rayon pool and are aggregated in trial order.

mod figure1;
mod optimize;
mod report;
mod sweep;

pub use figure1::{count_violations, margin_bins, run_figure1, MarginBin, ScatterRecord};
pub use optimize::{maximize_y, project_to_simplex, OptimizerMethod, OptimizerResult};
pub use report::{
    emit_records, emit_sweep, parse_records_json, records_to_csv, sweep_to_csv, to_json_string, ReportFormat,
};
pub use sweep::{run_quantum_channel_sweep, run_theorem_sweep, GroupSummary, SweepReport};

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Result};
use crate::noise::{NoisyParameter, StirapParams};
use crate::rng::RngSeed;
use crate::tol;

/// What an experiment simulates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    /// Noisy STIRAP on a qutrit. `fixed_angle` overrides the non-fluctuating angle.
    Stirap {
        noisy: NoisyParameter,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fixed_angle: Option<f64>,
    },
    /// Haar-random mixtures of unitaries.
    RandomUnitary,
    /// The four standard qubit channels plus amplitude damping.
    QuantumChannels,
}

impl ModelSpec {
    pub fn stirap_params(&self) -> Option<StirapParams> {
        match *self {
            ModelSpec::Stirap { noisy, fixed_angle } => {
                let p = StirapParams::scatter_default(noisy);
                Some(fixed_angle.map_or(p, |a| p.with_fixed_angle(a)))
            }
            _ => None,
        }
    }
}

fn default_tolerance() -> f64 {
    tol::THEOREM
}

/// Experiment parameters.
///
/// `points` is the number of trials. `realizations` is the ensemble size `N`
/// for scatter runs and the largest realization count for random-unitary
/// sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: RngSeed,
    pub points: usize,
    pub realizations: usize,
    #[serde(default)]
    pub dims: Vec<usize>,
    pub model: ModelSpec,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    /// 200 qutrit states, each evolved under 100 noisy STIRAP transfers.
    pub fn figure1(noisy: NoisyParameter, seed: u64) -> Self {
        Self {
            seed: RngSeed::new(seed, 0),
            points: 200,
            realizations: 100,
            dims: vec![3],
            model: ModelSpec::Stirap {
                noisy,
                fixed_angle: None,
            },
            tolerance: tol::THEOREM,
            output_path: None,
        }
    }

    /// Dimensions 2 to 6 with 1 to 8 Haar realizations per channel.
    pub fn theorem_sweep(seed: u64, trials: usize) -> Self {
        Self {
            seed: RngSeed::new(seed, 0),
            points: trials,
            realizations: 8,
            dims: (2..=6).collect(),
            model: ModelSpec::RandomUnitary,
            tolerance: tol::THEOREM,
            output_path: None,
        }
    }

    pub fn quantum_channel_sweep(seed: u64, trials: usize) -> Self {
        Self {
            seed: RngSeed::new(seed, 0),
            points: trials,
            realizations: 1,
            dims: vec![2],
            model: ModelSpec::QuantumChannels,
            tolerance: tol::THEOREM,
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(invalid_input("points must be at least 1"));
        }
        if self.realizations == 0 {
            return Err(invalid_input("realizations must be at least 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(invalid_input(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if let Some(d) = self.dims.iter().find(|&&d| d < 2) {
            return Err(invalid_input(format!("dimension {d} is below 2")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_json_with_defaults() {
        let text =
            r#"{"seed": 5, "points": 10, "realizations": 3, "dims": [2, 3], "model": {"kind": "random_unitary"}}"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.tolerance, 1e-9);
        assert!(cfg.validate().is_ok());

        let text = r#"{"seed": {"seed": 5}, "points": 10, "realizations": 100,
                       "model": {"kind": "stirap", "noisy": "theta", "fixed_angle": 0.5}}"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.model.stirap_params().unwrap().alpha, 0.5);
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::theorem_sweep(1, 10);
        cfg.points = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::theorem_sweep(1, 10);
        cfg.tolerance = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::theorem_sweep(1, 10);
        cfg.dims = vec![1, 2];
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::figure1(NoisyParameter::Alpha, 1);
        cfg.realizations = 0;
        assert!(cfg.validate().is_err());
    }
}
