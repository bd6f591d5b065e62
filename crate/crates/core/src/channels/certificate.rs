use serde::{Deserialize, Serialize};

use super::{completeness_defect, operator_shape, KrausChannel};
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::spectral::SortedSpectrum;
use crate::state::DensityMatrix;
use crate::tol;

/// Structural properties of a Kraus set and the resulting cooling verdict.
///
/// Row sums are taken in the computational basis:
/// `row_sums[m] = Σ_{λ,n} |E_λ[m, n]|²`. If every row sum is at most one, no
/// input population can be exceeded by any output population, so the channel
/// cannot cool. To test the condition in another basis, rotate the operators
/// before certifying.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelCertificate {
    /// `max |Σ E†E - I|`.
    pub cptp_defect: f64,
    /// `max |Σ E E† - I|`.
    pub unital_defect: f64,
    /// Every `E†E` is a nonnegative multiple of the identity. Sufficient, not
    /// necessary, for the channel to be a mixture of unitaries.
    pub is_mixed_unitary: bool,
    pub row_sums: Vec<f64>,
    /// `max(row_sums) <= 1 + 1e-10`.
    pub cooling_impossible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<CoolingWitness>,
}

/// An input state whose largest population grows under the channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoolingWitness {
    pub state: DensityMatrix,
    pub before: SortedSpectrum,
    pub after: SortedSpectrum,
}

pub fn certify(ch: &KrausChannel) -> ChannelCertificate {
    // a constructed channel always has a valid operator list
    certify_operators(ch.ops()).expect("KrausChannel operators are validated at construction")
}

/// Certifies a raw operator list, which need not be complete.
///
/// When the row-sum condition fails and the set is complete, the maximally
/// mixed input is attached as a witness: its output has diagonal entries
/// `s_m / d`, so the largest output eigenvalue is at least `max s_m / d > 1/d`.
pub fn certify_operators(ops: &[ComplexMatrix]) -> Result<ChannelCertificate> {
    let (dim_out, dim_in) = operator_shape(ops)?;
    let cptp_defect = completeness_defect(ops)?;
    let unital = ops.iter().fold(ComplexMatrix::zeros(dim_out, dim_out), |acc, e| {
        &acc + &(e * &e.adjoint())
    });
    let unital_defect = unital.identity_defect();

    let is_mixed_unitary = dim_in == dim_out
        && ops.iter().all(|e| {
            let gram = &e.adjoint() * e;
            let c = gram.trace().re / dim_in as f64;
            c >= -tol::UNITARY && gram.max_abs_diff(&ComplexMatrix::identity(dim_in).scale(c)) <= tol::UNITARY
        });

    let row_sums: Vec<f64> = (0..dim_out)
        .map(|m| {
            ops.iter()
                .map(|e| (0..dim_in).map(|n| e.get(m, n).norm_sqr()).sum::<f64>())
                .sum()
        })
        .collect();
    let max_row = row_sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cooling_impossible = max_row <= 1.0 + tol::CPTP;

    let witness = if !cooling_impossible && cptp_defect <= tol::CPTP {
        maximally_mixed_witness(ops, dim_in)
    } else {
        None
    };

    Ok(ChannelCertificate {
        cptp_defect,
        unital_defect,
        is_mixed_unitary,
        row_sums,
        cooling_impossible,
        witness,
    })
}

fn maximally_mixed_witness(ops: &[ComplexMatrix], dim_in: usize) -> Option<CoolingWitness> {
    let state = DensityMatrix::maximally_mixed(dim_in).ok()?;
    let out = ops
        .iter()
        .fold(ComplexMatrix::zeros(ops[0].rows(), ops[0].rows()), |acc, e| {
            &acc + &state.matrix().conjugate_by(e)
        });
    let after = DensityMatrix::produced(out.hermitian_part()).ok()?;
    let before = state.spectrum().clone();
    let after = after.spectrum().clone();
    (after.largest() > before.largest()).then_some(CoolingWitness { state, before, after })
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::matrix::pauli;

    #[test]
    fn amplitude_damping_certificate_and_witness() {
        let cert = certify(&amplitude_damping(0.5).unwrap());
        assert!((cert.row_sums[0] - 1.5).abs() < 1e-12);
        assert!((cert.row_sums[1] - 0.5).abs() < 1e-12);
        assert!(!cert.cooling_impossible);
        assert!(!cert.is_mixed_unitary);
        assert!(cert.unital_defect > 0.4);
        let w = cert.witness.expect("witness");
        assert!((w.before.largest() - 0.5).abs() < 1e-15);
        assert!((w.after.largest() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn incomplete_set_has_defect_and_no_witness() {
        let ops = vec![ComplexMatrix::from_real_diagonal(&[1.0, 0.0]), pauli::x()];
        let cert = certify_operators(&ops).unwrap();
        assert!((cert.cptp_defect - 1.0).abs() < 1e-15);
        assert!(!cert.cooling_impossible);
        assert!(cert.witness.is_none());
        assert!(certify_operators(&[]).is_err());
    }

    #[test]
    fn bit_flip_certificate() {
        for p in [0.0, 0.3, 1.0] {
            let cert = certify(&standard_channel(StandardChannel::BitFlip, p).unwrap());
            assert!(cert.row_sums.iter().all(|s| (s - 1.0).abs() < 1e-12));
            assert!(cert.cooling_impossible && cert.is_mixed_unitary);
            assert!(cert.witness.is_none());
        }
    }

    #[test]
    fn non_unitary_but_scaled_isometry_is_not_mixed_unitary() {
        // E†E ∝ I fails for projectors
        let ops = vec![
            ComplexMatrix::from_real_diagonal(&[1.0, 0.0]),
            ComplexMatrix::from_real_diagonal(&[0.0, 1.0]),
        ];
        let cert = certify_operators(&ops).unwrap();
        assert!(cert.cptp_defect < 1e-15 && cert.unital_defect < 1e-15);
        assert!(!cert.is_mixed_unitary);
        assert!(cert.cooling_impossible);
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = certify(&amplitude_damping(0.5).unwrap());
        let text = serde_json::to_string(&cert).unwrap();
        let back: ChannelCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back.row_sums, cert.row_sums);
        assert_eq!(back.cooling_impossible, cert.cooling_impossible);
        assert!(back.witness.is_some());
    }
}
