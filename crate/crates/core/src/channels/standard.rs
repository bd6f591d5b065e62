use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Error, Result};
use crate::matrix::{pauli, Complex64, ComplexMatrix};
use crate::random::sample_haar;
use crate::rng::RngSeed;

use super::{KrausChannel, UnitaryRealization};

/// The four textbook qubit error channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardChannel {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    Depolarizing,
}

impl StandardChannel {
    pub const ALL: [StandardChannel; 4] = [
        StandardChannel::BitFlip,
        StandardChannel::PhaseFlip,
        StandardChannel::BitPhaseFlip,
        StandardChannel::Depolarizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StandardChannel::BitFlip => "bit_flip",
            StandardChannel::PhaseFlip => "phase_flip",
            StandardChannel::BitPhaseFlip => "bit_phase_flip",
            StandardChannel::Depolarizing => "depolarizing",
        }
    }
}

impl fmt::Display for StandardChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StandardChannel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s || k.name().replace('_', "-") == s)
            .ok_or_else(|| invalid_input(format!("unknown channel kind '{s}'")))
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid_input(format!("{name} must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// Kraus set for `kind` with parameter `p`.
///
/// The flip channels keep the state with probability `p`:
/// `{√p I, √(1-p) σ}` with `σ` = X, Z or Y. Depolarizing uses
/// `{√(1-3p/4) I, √p X/2, √p Y/2, √p Z/2}`.
pub fn standard_channel(kind: StandardChannel, p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    let id = ComplexMatrix::identity(2);
    let ops = match kind {
        StandardChannel::BitFlip => vec![id.scale(p.sqrt()), pauli::x().scale((1.0 - p).sqrt())],
        StandardChannel::PhaseFlip => vec![id.scale(p.sqrt()), pauli::z().scale((1.0 - p).sqrt())],
        StandardChannel::BitPhaseFlip => vec![id.scale(p.sqrt()), pauli::y().scale((1.0 - p).sqrt())],
        StandardChannel::Depolarizing => {
            let half = p.sqrt() / 2.0;
            vec![
                id.scale((1.0 - 0.75 * p).sqrt()),
                pauli::x().scale(half),
                pauli::y().scale(half),
                pauli::z().scale(half),
            ]
        }
    };
    KrausChannel::new(ops)
}

/// `{[[1, 0], [0, √(1-γ)]], [[0, √γ], [0, 0]]}`: relaxation towards `|0⟩`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    check_probability("gamma", gamma)?;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let keep = ComplexMatrix::from_row_slice(2, 2, &[one, zero, zero, Complex64::new((1.0 - gamma).sqrt(), 0.0)])?;
    let decay = ComplexMatrix::from_row_slice(2, 2, &[zero, Complex64::new(gamma.sqrt(), 0.0), zero, zero])?;
    KrausChannel::new(vec![keep, decay])
}

pub fn haar_random_unitary(dim: usize, seed: RngSeed) -> Result<UnitaryRealization> {
    if dim == 0 {
        return Err(invalid_input("dimension must be positive"));
    }
    UnitaryRealization::new(sample_haar(dim, &mut seed.rng()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_kraus, certify};
    use crate::state::DensityMatrix;

    fn diag_close(rho: &DensityMatrix, expected: &[f64]) -> bool {
        rho.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(expected)) <= 1e-12
    }

    #[test]
    fn bit_flip_at_one_is_identity() {
        let ch = standard_channel(StandardChannel::BitFlip, 1.0).unwrap();
        assert_eq!(ch.ops()[1], ComplexMatrix::zeros(2, 2));
        let rho = crate::random_density_matrix(2, 12.into()).unwrap();
        assert!(apply_kraus(&ch, &rho).unwrap().matrix().max_abs_diff(rho.matrix()) <= 1e-15);
    }

    #[test]
    fn all_kinds_complete_with_unit_rows() {
        for kind in StandardChannel::ALL {
            let cert = certify(&standard_channel(kind, 0.3).unwrap());
            assert!(cert.cptp_defect <= 1e-12, "{kind}");
            assert!(cert.unital_defect <= 1e-12, "{kind}");
            assert!(cert.row_sums.iter().all(|s| (s - 1.0).abs() <= 1e-12), "{kind}");
            assert!(cert.cooling_impossible);
        }
    }

    #[test]
    fn depolarizing_fully_mixes_at_one() {
        // (1/4)[ρ + XρX + YρY + ZρZ] with ρ = |0⟩⟨0|
        let ch = standard_channel(StandardChannel::Depolarizing, 1.0).unwrap();
        let out = apply_kraus(&ch, &DensityMatrix::diagonal(&[1.0, 0.0]).unwrap()).unwrap();
        assert!(diag_close(&out, &[0.5, 0.5]));
    }

    #[test]
    fn depolarizing_at_zero_is_identity() {
        let ch = standard_channel(StandardChannel::Depolarizing, 0.0).unwrap();
        let rho = crate::random_density_matrix(2, 5.into()).unwrap();
        assert!(apply_kraus(&ch, &rho).unwrap().matrix().max_abs_diff(rho.matrix()) <= 1e-15);
    }

    #[test]
    fn amplitude_damping_actions() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        // ½ diag(1, 1-γ) + ½ diag(γ, 0) at γ = ½
        let out = apply_kraus(&amplitude_damping(0.5).unwrap(), &mixed).unwrap();
        assert!(diag_close(&out, &[0.75, 0.25]));

        let rho = crate::random_density_matrix(2, 6.into()).unwrap();
        let out = apply_kraus(&amplitude_damping(1.0).unwrap(), &rho).unwrap();
        assert!(diag_close(&out, &[1.0, 0.0]));
        let out = apply_kraus(&amplitude_damping(0.0).unwrap(), &rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) <= 1e-15);
        assert!(!certify(&amplitude_damping(0.5).unwrap()).cooling_impossible);
    }

    #[test]
    fn parameter_ranges() {
        assert!(standard_channel(StandardChannel::PhaseFlip, 1.5).is_err());
        assert!(standard_channel(StandardChannel::PhaseFlip, -0.1).is_err());
        assert!(amplitude_damping(1.1).is_err());
        assert_eq!(
            "bit-phase-flip".parse::<StandardChannel>().unwrap(),
            StandardChannel::BitPhaseFlip
        );
        assert!("amplitude".parse::<StandardChannel>().is_err());
    }

    #[test]
    fn haar_determinism_and_scalar_case() {
        let a = haar_random_unitary(4, RngSeed::new(3, 1)).unwrap();
        let b = haar_random_unitary(4, RngSeed::new(3, 1)).unwrap();
        assert_eq!(a, b);
        let s = haar_random_unitary(1, RngSeed::from(8)).unwrap();
        assert!((s.matrix().get(0, 0).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn haar_first_entry_moment() {
        // E|U_00|² = 1/d under the Haar measure
        let mut rng = RngSeed::from(2718).rng();
        let n = 10_000;
        let mean = (0..n)
            .map(|_| sample_haar(3, &mut rng).get(0, 0).norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0 / 3.0).abs() < 0.01, "mean {mean}");
    }
}
