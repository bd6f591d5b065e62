use crate::error::{invalid_input, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::spectral::diagonalize_hermitian_with;
use crate::tol;

use super::UnitaryRealization;

/// A Hamiltonian held constant for `duration` (units with ħ = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSegment {
    h: ComplexMatrix,
    duration: f64,
}

impl HamiltonianSegment {
    pub fn new(h: ComplexMatrix, duration: f64) -> Result<Self> {
        if !(duration.is_finite() && duration >= 0.0) {
            return Err(invalid_input(format!("segment duration must be >= 0, got {duration}")));
        }
        let defect = h.hermiticity_defect();
        if defect > tol::HERMITIAN {
            return Err(invalid_input(format!(
                "segment Hamiltonian is not Hermitian (defect {defect:.3e})"
            )));
        }
        Ok(Self { h, duration })
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.h
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// `exp(-i H t)` through the spectral decomposition of `H`.
    pub fn evolution(&self) -> Result<ComplexMatrix> {
        let eig = diagonalize_hermitian_with(&self.h, tol::HERMITIAN)?;
        let d = self.h.rows();
        let phases: Vec<Complex64> = eig
            .values
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -e * self.duration))
            .collect();
        let diag = ComplexMatrix::from_row_slice(
            d,
            d,
            &(0..d * d)
                .map(|k| {
                    if k / d == k % d {
                        phases[k / d]
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect::<Vec<_>>(),
        )?;
        Ok(diag.conjugate_by(&eig.vectors))
    }
}

/// Time-ordered propagator of a piecewise-constant Hamiltonian.
///
/// Segments are given in chronological order; the result is
/// `exp(-i H_n t_n) ⋯ exp(-i H_1 t_1)`. An empty list needs `dim` to build
/// the identity.
pub fn propagator(segments: &[HamiltonianSegment], dim: usize) -> Result<UnitaryRealization> {
    let dim = segments.first().map_or(dim, |s| s.h.rows());
    let mut u = ComplexMatrix::identity(dim);
    for (k, seg) in segments.iter().enumerate() {
        if seg.h.rows() != dim {
            return Err(invalid_input(format!(
                "segment {k} has dimension {}, expected {dim}",
                seg.h.rows()
            )));
        }
        u = &seg.evolution()? * &u;
    }
    UnitaryRealization::new(u)
}
