use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Result};
use crate::noise::{stirap_channel, NoiseEnsemble};
use crate::rng::RngSeed;
use crate::state::sample_density_matrix;

use super::ExperimentConfig;

/// One `(P_1, Q_1)` point of a scatter run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterRecord {
    #[serde(rename = "trial")]
    pub trial_index: u64,
    pub model: String,
    pub p1: f64,
    pub q1: f64,
    pub seed: RngSeed,
}

impl ScatterRecord {
    pub fn margin(&self) -> f64 {
        self.p1 - self.q1
    }
}

/// Largest-population scatter for noisy STIRAP.
///
/// Each trial draws a qutrit state (flat-Dirichlet spectrum, Haar basis),
/// flat-Dirichlet weights over `cfg.realizations` realizations and the noisy
/// angles uniformly on `[0, 2π)`.
pub fn run_figure1(cfg: &ExperimentConfig) -> Result<Vec<ScatterRecord>> {
    cfg.validate()?;
    let params = cfg
        .model
        .stirap_params()
        .ok_or_else(|| invalid_input("scatter runs need a stirap model"))?;
    let model = format!("stirap_{}", params.noisy.name());
    (0..cfg.points as u64)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.trial(i);
            let mut rng = seed.rng();
            let rho = sample_density_matrix(3, &mut rng)?;
            let ens = NoiseEnsemble::sample(cfg.realizations, &mut rng)?;
            let out = stirap_channel(&params, &ens)?.apply(&rho)?;
            Ok(ScatterRecord {
                trial_index: i,
                model: model.clone(),
                p1: rho.spectrum().largest(),
                q1: out.spectrum().largest(),
                seed,
            })
        })
        .collect()
}

/// Records with `q1 > p1 + tolerance`.
pub fn count_violations(records: &[ScatterRecord], tolerance: f64) -> usize {
    records.iter().filter(|r| r.q1 > r.p1 + tolerance).count()
}

/// Margin statistics for records whose `p1` falls in `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub min_margin: Option<f64>,
    pub max_margin: Option<f64>,
}

/// Splits `[0, 1]` into `bins` equal bins of `p1` (the last one closed).
pub fn margin_bins(records: &[ScatterRecord], bins: usize) -> Vec<MarginBin> {
    let bins = bins.max(1);
    let width = 1.0 / bins as f64;
    let mut out: Vec<MarginBin> = (0..bins)
        .map(|b| MarginBin {
            lo: b as f64 * width,
            hi: (b + 1) as f64 * width,
            count: 0,
            min_margin: None,
            max_margin: None,
        })
        .collect();
    for r in records {
        let b = ((r.p1 / width) as usize).min(bins - 1);
        let bin = &mut out[b];
        let m = r.margin();
        bin.count += 1;
        bin.min_margin = Some(bin.min_margin.map_or(m, |x| x.min(m)));
        bin.max_margin = Some(bin.max_margin.map_or(m, |x| x.max(m)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoisyParameter;

    fn small(noisy: NoisyParameter, realizations: usize) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::figure1(noisy, 17);
        cfg.points = 40;
        cfg.realizations = realizations;
        cfg
    }

    #[test]
    fn single_realization_stays_on_diagonal() {
        for noisy in [NoisyParameter::Theta, NoisyParameter::Alpha] {
            let records = run_figure1(&small(noisy, 1)).unwrap();
            assert!(records.iter().all(|r| (r.q1 - r.p1).abs() <= 1e-10));
        }
    }

    #[test]
    fn noisy_scatter_is_below_diagonal() {
        let records = run_figure1(&small(NoisyParameter::Theta, 20)).unwrap();
        assert_eq!(records.len(), 40);
        assert_eq!(count_violations(&records, 1e-9), 0);
        assert!(records.iter().all(|r| r.model == "stirap_theta"));
        assert!(records.iter().enumerate().all(|(i, r)| r.trial_index == i as u64));
    }

    #[test]
    fn reruns_are_identical() {
        let a = run_figure1(&small(NoisyParameter::Alpha, 10)).unwrap();
        let b = run_figure1(&small(NoisyParameter::Alpha, 10)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_non_stirap_model() {
        assert!(run_figure1(&ExperimentConfig::theorem_sweep(1, 5)).is_err());
    }

    #[test]
    fn bins_cover_records() {
        let records = run_figure1(&small(NoisyParameter::Theta, 5)).unwrap();
        let bins = margin_bins(&records, 10);
        assert_eq!(bins.iter().map(|b| b.count).sum::<usize>(), records.len());
        assert!(bins.iter().filter_map(|b| b.min_margin).all(|m| m >= -1e-9));
    }
}
