//! Hermitian eigendecomposition and descending spectra.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tol;

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
///
/// Column `k` of `vectors` is the eigenvector for `values[k]`. Under
/// degeneracy no particular basis of the eigenspace is promised.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V · diag(values) · V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let diag = ComplexMatrix::from_real_diagonal(&self.values);
        diag.conjugate_by(&self.vectors)
    }
}

pub fn diagonalize_hermitian(m: &ComplexMatrix) -> Result<HermitianEigen> {
    diagonalize_hermitian_with(m, tol::HERMITIAN)
}

pub fn diagonalize_hermitian_with(m: &ComplexMatrix, hermitian_tol: f64) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(invalid_input(format!(
            "cannot diagonalize a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > hermitian_tol {
        return Err(invalid_input(format!(
            "matrix is not Hermitian (defect {defect:.3e} > {hermitian_tol:.3e})"
        )));
    }
    let eig = SymmetricEigen::new(m.hermitian_part().into_dmatrix());
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = eig.eigenvectors.select_columns(&order);
    Ok(HermitianEigen {
        values,
        vectors: ComplexMatrix::from_dmatrix_unchecked(vectors),
    })
}

/// Populations `P_1 >= P_2 >= ...` of a density matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SortedSpectrum {
    probs: Vec<f64>,
}

impl SortedSpectrum {
    /// Sorts descending, clamps `[-clamp, 0)` to zero and checks the probability invariants.
    pub fn from_eigenvalues(mut values: Vec<f64>, clamp: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid_input("empty spectrum"));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        for v in values.iter_mut() {
            if *v < -clamp {
                return Err(Error::InvalidState(format!("eigenvalue {v:.3e} is below -{clamp:.1e}")));
            }
            if *v > 1.0 + clamp {
                return Err(Error::InvalidState(format!("eigenvalue {v} exceeds 1")));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol::PRODUCED_STATE {
            return Err(Error::InvalidState(format!("populations sum to {sum}, not 1")));
        }
        Ok(Self { probs: values })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn largest(&self) -> f64 {
        self.probs[0]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Descending spectrum of an arbitrary matrix claimed to be a state.
pub fn spectrum_of(m: &ComplexMatrix) -> Result<SortedSpectrum> {
    let eig = diagonalize_hermitian(m).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::InvalidState(msg),
        other => other,
    })?;
    SortedSpectrum::from_eigenvalues(eig.values, tol::EIGEN_CLAMP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{pauli, Complex64};
    use crate::random::sample_haar;
    use crate::rng::RngSeed;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn random_hermitian(dim: usize, seed: u64) -> ComplexMatrix {
        let mut rng = RngSeed::from(seed).rng();
        let entries: Vec<Complex64> = (0..dim * dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        ComplexMatrix::from_row_slice(dim, dim, &entries)
            .unwrap()
            .hermitian_part()
    }

    #[test]
    fn diagonal_input_yields_permutation() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let eig = diagonalize_hermitian(&m).unwrap();
        assert_eq!(eig.values, vec![3.0, 2.0, 1.0]);
        for c in 0..3 {
            let ones: Vec<_> = (0..3).filter(|&r| eig.vectors.get(r, c).norm() > 0.5).collect();
            assert_eq!(ones, vec![2 - c]);
            assert!((eig.vectors.get(2 - c, c).norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn pauli_x_spectrum() {
        let eig = diagonalize_hermitian(&pauli::x()).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_round_trip() {
        let m = random_hermitian(4, 42);
        let eig = diagonalize_hermitian(&m).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&m) <= 1e-10);
        assert!((&eig.vectors.adjoint() * &eig.vectors).identity_defect() <= 1e-10);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn round_trip_up_to_sixteen() {
        for dim in 1..=16 {
            let m = random_hermitian(dim, 1000 + dim as u64);
            let eig = diagonalize_hermitian(&m).unwrap();
            assert!(eig.reconstruct().max_abs_diff(&m) <= 1e-10, "dim {dim}");
            assert!((&eig.vectors.adjoint() * &eig.vectors).identity_defect() <= 1e-10);
        }
    }

    #[test]
    fn rejects_non_square_and_non_hermitian() {
        assert!(matches!(
            diagonalize_hermitian(&ComplexMatrix::zeros(2, 3)),
            Err(Error::InvalidInput(_))
        ));
        let m = ComplexMatrix::from_parts(&[vec![0.0, 1.0], vec![0.0, 0.0]], &[vec![0.0; 2], vec![0.0; 2]]).unwrap();
        assert!(diagonalize_hermitian(&m).is_err());
        assert!(matches!(spectrum_of(&m), Err(Error::InvalidState(_))));
    }

    #[test]
    fn spectrum_clamps_tiny_negatives_only() {
        let s = SortedSpectrum::from_eigenvalues(vec![-5e-11, 1.0 + 5e-11], tol::EIGEN_CLAMP).unwrap();
        assert_eq!(s.probs()[1], 0.0);
        assert!(SortedSpectrum::from_eigenvalues(vec![-1e-6, 1.0 + 1e-6], tol::EIGEN_CLAMP).is_err());
    }

    #[test]
    fn spectrum_ignores_unitary_basis_change() {
        let diag = ComplexMatrix::from_real_diagonal(&[0.1, 0.6, 0.3]);
        let u = sample_haar(3, &mut RngSeed::from(9).rng());
        let s = spectrum_of(&diag.conjugate_by(&u)).unwrap();
        for (a, b) in s.probs().iter().zip([0.6, 0.3, 0.1]) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
