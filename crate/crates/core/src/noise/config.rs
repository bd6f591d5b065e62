//! Model configuration documents:
//! `{"model": "two_level" | "mr" | "stirap", "params": {..}, "ensemble": {"thetas": [..], "lambdas": [..]}}`.

use serde::{Deserialize, Serialize};

use crate::channels::{RandomUnitaryChannel, UnitaryRealization};
use crate::error::Result;

use super::{mr_full_unitary, stirap_channel, two_level_channel, MRParams, NoiseEnsemble, StirapParams};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TwoLevelParams {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", content = "params", rename_all = "snake_case")]
pub enum ModelParams {
    TwoLevel(TwoLevelParams),
    Mr(MRParams),
    Stirap(StirapParams),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    #[serde(flatten)]
    pub model: ModelParams,
    pub ensemble: NoiseEnsemble,
}

impl ModelConfig {
    /// The model as a mixture of unitaries on its full (truncated) space.
    pub fn channel(&self) -> Result<RandomUnitaryChannel> {
        match &self.model {
            ModelParams::TwoLevel(_) => Ok(two_level_channel(&self.ensemble)),
            ModelParams::Stirap(p) => stirap_channel(p, &self.ensemble),
            ModelParams::Mr(p) => {
                p.validate()?;
                let realizations = self
                    .ensemble
                    .iter()
                    .map(|(l, t)| Ok((l, UnitaryRealization::new(mr_full_unitary(t, p))?)))
                    .collect::<Result<Vec<_>>>()?;
                RandomUnitaryChannel::new(realizations)
            }
        }
    }
}
