//! Density matrices.

use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::random::{sample_haar, sample_simplex};
use crate::rng::RngSeed;
use crate::spectral::{diagonalize_hermitian_with, SortedSpectrum};
use crate::tol::{self, Tolerances};

/// Hermitian, positive semidefinite, unit-trace matrix.
///
/// The descending spectrum is computed once at construction, which is also
/// where the invariants are checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrix", into = "ComplexMatrix")]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    spectrum: SortedSpectrum,
}

impl TryFrom<ComplexMatrix> for DensityMatrix {
    type Error = Error;

    fn try_from(mat: ComplexMatrix) -> Result<Self> {
        DensityMatrix::new(mat)
    }
}

impl From<DensityMatrix> for ComplexMatrix {
    fn from(rho: DensityMatrix) -> Self {
        rho.mat
    }
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(mat, &Tolerances::default())
    }

    pub fn with_tolerances(mat: ComplexMatrix, tols: &Tolerances) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidState(format!(
                "density matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let herm = mat.hermiticity_defect();
        if herm > tols.hermitian {
            return Err(Error::InvalidState(format!(
                "Hermiticity defect {herm:.3e} exceeds {:.1e}",
                tols.hermitian
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > tols.trace || tr.im.abs() > tols.trace {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let eig = diagonalize_hermitian_with(&mat, tols.hermitian)?;
        let spectrum = SortedSpectrum::from_eigenvalues(eig.values, tols.eigen_clamp)?;
        Ok(Self { mat, spectrum })
    }

    /// Output of a channel: validated against the looser produced-state tolerances.
    pub(crate) fn produced(mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(mat, &Tolerances::produced())
    }

    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        if populations.is_empty() {
            return Err(invalid_input("no populations given"));
        }
        Self::new(ComplexMatrix::from_real_diagonal(populations))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(invalid_input("dimension must be positive"));
        }
        Self::diagonal(&vec![1.0 / dim as f64; dim])
    }

    /// `|ψ⟩⟨ψ|` for a normalised amplitude vector.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let d = amplitudes.len();
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if d == 0 || (norm - 1.0).abs() > tol::TRACE {
            return Err(invalid_input(format!("amplitudes must be normalised (norm² = {norm})")));
        }
        let entries: Vec<Complex64> = (0..d * d)
            .map(|k| amplitudes[k / d] * amplitudes[k % d].conj())
            .collect();
        Self::new(ComplexMatrix::from_row_slice(d, d, &entries)?)
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn spectrum(&self) -> &SortedSpectrum {
        &self.spectrum
    }
}

/// Descending eigenvalues of `rho`, tiny negatives clamped to zero.
pub fn sorted_spectrum(rho: &DensityMatrix) -> SortedSpectrum {
    rho.spectrum.clone()
}

/// Flat-Dirichlet spectrum in a Haar-random eigenbasis.
pub fn sample_density_matrix<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<DensityMatrix> {
    if dim < 2 {
        return Err(invalid_input(format!("random states need dim >= 2, got {dim}")));
    }
    let populations = sample_simplex(dim, rng);
    let basis = sample_haar(dim, rng);
    let mat = ComplexMatrix::from_real_diagonal(&populations).conjugate_by(&basis);
    DensityMatrix::produced(mat.hermitian_part())
}

pub fn random_density_matrix(dim: usize, seed: RngSeed) -> Result<DensityMatrix> {
    sample_density_matrix(dim, &mut seed.rng())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn approx(a: &[f64], b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= eps)
    }

    #[test]
    fn diagonal_reorder() {
        let rho = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        assert!(approx(sorted_spectrum(&rho).probs(), &[0.7, 0.3], 1e-15));
    }

    #[test]
    fn maximally_mixed_spectrum() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(approx(sorted_spectrum(&rho).probs(), &[0.5, 0.5], 1e-15));
    }

    #[test]
    fn rank_one_projector() {
        let m = ComplexMatrix::from_parts(&[vec![0.5, 0.5], vec![0.5, 0.5]], &[vec![0.0; 2], vec![0.0; 2]]).unwrap();
        let rho = DensityMatrix::new(m).unwrap();
        assert!(approx(sorted_spectrum(&rho).probs(), &[1.0, 0.0], 1e-15));
    }

    #[test]
    fn rejects_bad_states() {
        let not_herm =
            ComplexMatrix::from_parts(&[vec![0.5, 0.1], vec![0.0, 0.5]], &[vec![0.0; 2], vec![0.0; 2]]).unwrap();
        assert!(matches!(DensityMatrix::new(not_herm), Err(Error::InvalidState(_))));
        assert!(DensityMatrix::diagonal(&[0.6, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.2, -0.2]).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn json_round_trip_validates() {
        let rho = random_density_matrix(3, RngSeed::from(8)).unwrap();
        let text = serde_json::to_string(&rho).unwrap();
        let back: DensityMatrix = serde_json::from_str(&text).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) == 0.0);
        let bad = r#"{"dim":2,"re":[[0.9,0],[0,0.9]],"im":[[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<DensityMatrix>(bad).is_err());
    }

    #[test]
    fn random_states_satisfy_contract() {
        for s in 0..50 {
            let rho = random_density_matrix(2, RngSeed::from(s)).unwrap();
            assert!(rho.matrix().hermiticity_defect() <= 1e-10);
            assert!((rho.matrix().trace().re - 1.0).abs() <= 1e-10);
            assert!(rho.spectrum().probs().iter().all(|&p| p >= 0.0));
        }
        assert!(random_density_matrix(1, RngSeed::from(0)).is_err());
    }

    #[test]
    fn random_states_are_deterministic() {
        let a = random_density_matrix(3, RngSeed::new(77, 1)).unwrap();
        let b = random_density_matrix(3, RngSeed::new(77, 1)).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn qubit_mean_largest_population() {
        // E[max(U, 1-U)] = 3/4 for U uniform on [0, 1]
        let mut rng = RngSeed::from(2024).rng();
        let n = 10_000;
        let mean = (0..n)
            .map(|_| sample_density_matrix(2, &mut rng).unwrap().spectrum().largest())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.75).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn qutrit_order_statistics() {
        // Reference: sorted gaps of two independent uniforms on [0, 1].
        let n = 10_000;
        let mut oracle_rng = RngSeed::new(1, 99).rng();
        let mut reference = [0.0; 3];
        for _ in 0..n {
            let (a, b): (f64, f64) = (oracle_rng.random(), oracle_rng.random());
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let mut gaps = [lo, hi - lo, 1.0 - hi];
            gaps.sort_by(|x, y| y.total_cmp(x));
            for k in 0..3 {
                reference[k] += gaps[k] / n as f64;
            }
        }
        // closed form (1/n) Σ_{j>=k} 1/j
        let exact = [11.0 / 18.0, 5.0 / 18.0, 1.0 / 9.0];
        assert!(approx(&reference, &exact, 0.01));

        let mut rng = RngSeed::from(31).rng();
        let samples: Vec<Vec<f64>> = (0..n)
            .map(|_| sample_density_matrix(3, &mut rng).unwrap().spectrum().probs().to_vec())
            .collect();
        for k in 0..3 {
            let mean = samples.iter().map(|s| s[k]).sum::<f64>() / n as f64;
            let var = samples.iter().map(|s| (s[k] - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            let se = (var / n as f64).sqrt();
            assert!((mean - exact[k]).abs() <= 3.0 * se, "k={k}: {mean} vs {}", exact[k]);
        }
    }
}
