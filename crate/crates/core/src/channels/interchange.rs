//! Channel interchange documents:
//! `{"dim": d, "kind": "random_unitary" | "kraus", "ops": [{"weight": w, "re": [[..]], "im": [[..]]}, ..]}`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Result};
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;

use super::{apply_kraus, apply_random_unitary, to_kraus, KrausChannel, RandomUnitaryChannel, UnitaryRealization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    RandomUnitary,
    Kraus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorEntry {
    /// Probability of a unitary realization. On a Kraus entry it scales the
    /// operator by `√weight`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelDocument {
    /// Input dimension; every operator must have this many columns.
    pub dim: usize,
    pub kind: ChannelKind,
    pub ops: Vec<OperatorEntry>,
}

/// Either channel representation.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyChannel {
    RandomUnitary(RandomUnitaryChannel),
    Kraus(KrausChannel),
}

impl AnyChannel {
    pub fn dim_in(&self) -> usize {
        match self {
            AnyChannel::RandomUnitary(ch) => ch.dim(),
            AnyChannel::Kraus(ch) => ch.dim_in(),
        }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        match self {
            AnyChannel::RandomUnitary(ch) => apply_random_unitary(ch, rho),
            AnyChannel::Kraus(ch) => apply_kraus(ch, rho),
        }
    }

    pub fn to_kraus(&self) -> KrausChannel {
        match self {
            AnyChannel::RandomUnitary(ch) => to_kraus(ch),
            AnyChannel::Kraus(ch) => ch.clone(),
        }
    }
}

impl ChannelDocument {
    /// Matrices exactly as written (weights not yet applied).
    fn matrices(&self) -> Result<Vec<ComplexMatrix>> {
        if self.ops.is_empty() {
            return Err(invalid_input("channel document lists no operators"));
        }
        self.ops
            .iter()
            .enumerate()
            .map(|(k, entry)| {
                let m = ComplexMatrix::from_parts(&entry.re, &entry.im)
                    .map_err(|e| invalid_input(format!("operator {k}: {e}")))?;
                if m.cols() != self.dim {
                    return Err(invalid_input(format!(
                        "operator {k} has {} columns but dim is {}",
                        m.cols(),
                        self.dim
                    )));
                }
                if self.kind == ChannelKind::RandomUnitary && m.rows() != self.dim {
                    return Err(invalid_input(format!("unitary {k} is not {0}x{0}", self.dim)));
                }
                Ok(m)
            })
            .collect()
    }

    fn weight(&self, k: usize) -> Result<Option<f64>> {
        match self.ops[k].weight {
            Some(w) if !(w.is_finite() && w >= 0.0) => {
                Err(invalid_input(format!("operator {k} has invalid weight {w}")))
            }
            w => Ok(w),
        }
    }

    /// Kraus operators of the document, without any completeness check.
    pub fn kraus_operators(&self) -> Result<Vec<ComplexMatrix>> {
        let mats = self.matrices()?;
        mats.into_iter()
            .enumerate()
            .map(|(k, m)| match (self.kind, self.weight(k)?) {
                (ChannelKind::RandomUnitary, None) => Err(invalid_input(format!("unitary {k} has no weight"))),
                (_, Some(w)) => Ok(m.scale(w.sqrt())),
                (ChannelKind::Kraus, None) => Ok(m),
            })
            .collect()
    }

    /// Validated channel; `cptp_tol` bounds the completeness defect of Kraus documents.
    pub fn to_channel(&self, cptp_tol: f64) -> Result<AnyChannel> {
        match self.kind {
            ChannelKind::RandomUnitary => {
                let mats = self.matrices()?;
                let mut realizations = Vec::with_capacity(mats.len());
                for (k, m) in mats.into_iter().enumerate() {
                    let w = self
                        .weight(k)?
                        .ok_or_else(|| invalid_input(format!("unitary {k} has no weight")))?;
                    let u = UnitaryRealization::new(m).map_err(|e| invalid_input(format!("operator {k}: {e}")))?;
                    realizations.push((w, u));
                }
                Ok(AnyChannel::RandomUnitary(RandomUnitaryChannel::new(realizations)?))
            }
            ChannelKind::Kraus => Ok(AnyChannel::Kraus(KrausChannel::with_tolerance(
                self.kraus_operators()?,
                cptp_tol,
            )?)),
        }
    }

    pub fn from_random_unitary(ch: &RandomUnitaryChannel) -> Self {
        let ops = ch
            .realizations()
            .iter()
            .map(|(w, u)| {
                let (re, im) = u.matrix().to_parts();
                OperatorEntry {
                    weight: Some(*w),
                    re,
                    im,
                }
            })
            .collect();
        Self {
            dim: ch.dim(),
            kind: ChannelKind::RandomUnitary,
            ops,
        }
    }

    pub fn from_kraus(ch: &KrausChannel) -> Self {
        let ops = ch
            .ops()
            .iter()
            .map(|m| {
                let (re, im) = m.to_parts();
                OperatorEntry { weight: None, re, im }
            })
            .collect();
        Self {
            dim: ch.dim_in(),
            kind: ChannelKind::Kraus,
            ops,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{amplitude_damping, standard_channel, StandardChannel};
    use crate::error::Error;
    use crate::tol;

    #[test]
    fn random_unitary_document() {
        let text = r#"{"dim": 2, "kind": "random_unitary", "ops": [
            {"weight": 0.5, "re": [[1,0],[0,1]], "im": [[0,0],[0,0]]},
            {"weight": 0.5, "re": [[0,0],[0,0]], "im": [[0,1],[1,0]]}]}"#;
        let doc: ChannelDocument = serde_json::from_str(text).unwrap();
        let ch = doc.to_channel(tol::CPTP).unwrap();
        let out = ch.apply(&DensityMatrix::diagonal(&[0.7, 0.3]).unwrap()).unwrap();
        assert!(
            out.matrix()
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, 0.5]))
                < 1e-12
        );
        let ops = doc.kraus_operators().unwrap();
        assert!((ops[0].get(0, 0).re - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn kraus_document_round_trip() {
        let ch = amplitude_damping(0.3).unwrap();
        let doc = ChannelDocument::from_kraus(&ch);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"kind\":\"kraus\""));
        assert!(!text.contains("weight"));
        let back: ChannelDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_channel(tol::CPTP).unwrap(), AnyChannel::Kraus(ch));
    }

    #[test]
    fn document_errors() {
        let missing_weight = r#"{"dim": 1, "kind": "random_unitary", "ops": [{"re": [[1]], "im": [[0]]}]}"#;
        let doc: ChannelDocument = serde_json::from_str(missing_weight).unwrap();
        assert!(doc.to_channel(tol::CPTP).is_err());

        let wrong_dim = r#"{"dim": 3, "kind": "kraus", "ops": [{"re": [[1,0],[0,1]], "im": [[0,0],[0,0]]}]}"#;
        let doc: ChannelDocument = serde_json::from_str(wrong_dim).unwrap();
        assert!(doc.kraus_operators().is_err());

        let incomplete = ChannelDocument::from_kraus(&standard_channel(StandardChannel::BitFlip, 0.5).unwrap());
        let mut doc = incomplete.clone();
        doc.ops.pop();
        assert!(matches!(doc.to_channel(tol::CPTP), Err(Error::RejectedChannel { .. })));
        assert!(doc.kraus_operators().is_ok());

        let empty = r#"{"dim": 2, "kind": "kraus", "ops": []}"#;
        let doc: ChannelDocument = serde_json::from_str(empty).unwrap();
        assert!(doc.to_channel(tol::CPTP).is_err());
    }
}
