//! Random-unitary and Kraus channels.
//!
//! A [`RandomUnitaryChannel`] is a probability-weighted list of unitary
//! realizations, `ρ ↦ Σ_λ w_λ K_λ ρ K_λ†`. A [`KrausChannel`] is any operator
//! list satisfying the completeness relation `Σ E†E = I`. Either can be
//! certified with [`certify`].

mod certificate;
mod interchange;
mod propagator;
mod standard;

pub use certificate::{certify, certify_operators, ChannelCertificate, CoolingWitness};
pub use interchange::{AnyChannel, ChannelDocument, ChannelKind, OperatorEntry};
pub use propagator::{propagator, HamiltonianSegment};
pub use standard::{amplitude_damping, haar_random_unitary, standard_channel, StandardChannel};

use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;
use crate::tol;

/// `max |K†K - I|`; infinite for non-square input.
pub fn unitarity_defect(k: &ComplexMatrix) -> f64 {
    if !k.is_square() {
        return f64::INFINITY;
    }
    (&k.adjoint() * k).identity_defect()
}

/// A square matrix that is unitary within [`tol::UNITARY`]. Global phases are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryRealization(ComplexMatrix);

impl UnitaryRealization {
    pub fn new(k: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(k, tol::UNITARY)
    }

    pub fn with_tolerance(k: ComplexMatrix, tolerance: f64) -> Result<Self> {
        if !k.is_square() {
            return Err(invalid_input(format!(
                "unitary must be square, got {}x{}",
                k.rows(),
                k.cols()
            )));
        }
        let defect = unitarity_defect(&k);
        if defect > tolerance {
            return Err(invalid_input(format!(
                "matrix is not unitary (defect {defect:.3e} > {tolerance:.1e})"
            )));
        }
        Ok(Self(k))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn defect(&self) -> f64 {
        unitarity_defect(&self.0)
    }
}

/// `ρ ↦ Σ_λ w_λ K_λ ρ K_λ†` with `w` on the probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomUnitaryChannel {
    dim: usize,
    realizations: Vec<(f64, UnitaryRealization)>,
}

impl RandomUnitaryChannel {
    pub fn new(realizations: Vec<(f64, UnitaryRealization)>) -> Result<Self> {
        let Some((_, first)) = realizations.first() else {
            return Err(invalid_input("a random-unitary channel needs at least one realization"));
        };
        let dim = first.dim();
        let mut total = 0.0;
        for (k, (w, u)) in realizations.iter().enumerate() {
            if !(w.is_finite() && *w >= 0.0) {
                return Err(invalid_input(format!("weight {k} is {w}; weights must be nonnegative")));
            }
            if u.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            total += w;
        }
        if (total - 1.0).abs() > tol::WEIGHT_SUM {
            return Err(invalid_input(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { dim, realizations })
    }

    /// Builds a channel from parallel weight and unitary lists.
    pub fn from_parts(weights: &[f64], unitaries: Vec<UnitaryRealization>) -> Result<Self> {
        if weights.len() != unitaries.len() {
            return Err(invalid_input(format!(
                "{} weights for {} unitaries",
                weights.len(),
                unitaries.len()
            )));
        }
        Self::new(weights.iter().copied().zip(unitaries).collect())
    }

    pub fn single(u: UnitaryRealization) -> Self {
        Self {
            dim: u.dim(),
            realizations: vec![(1.0, u)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn realizations(&self) -> &[(f64, UnitaryRealization)] {
        &self.realizations
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply_random_unitary(self, rho)
    }
}

pub fn apply_random_unitary(ch: &RandomUnitaryChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != ch.dim {
        return Err(Error::DimensionMismatch {
            expected: ch.dim,
            found: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(ch.dim, ch.dim);
    for (w, u) in &ch.realizations {
        if *w == 0.0 {
            continue;
        }
        out = &out + &rho.matrix().conjugate_by(u.matrix()).scale(*w);
    }
    DensityMatrix::produced(out.hermitian_part())
}

/// Operator list `E_λ` (each `dim_out × dim_in`) with `Σ E†E = I` within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    ops: Vec<ComplexMatrix>,
}

/// Checks that `ops` is non-empty with a common shape; returns `(dim_out, dim_in)`.
pub(crate) fn operator_shape(ops: &[ComplexMatrix]) -> Result<(usize, usize)> {
    let Some(first) = ops.first() else {
        return Err(invalid_input("operator list is empty"));
    };
    let shape = (first.rows(), first.cols());
    for (k, op) in ops.iter().enumerate() {
        if (op.rows(), op.cols()) != shape {
            return Err(invalid_input(format!(
                "operator {k} is {}x{}, expected {}x{}",
                op.rows(),
                op.cols(),
                shape.0,
                shape.1
            )));
        }
    }
    Ok(shape)
}

/// `max |Σ E†E - I|`.
pub fn completeness_defect(ops: &[ComplexMatrix]) -> Result<f64> {
    let (_, dim_in) = operator_shape(ops)?;
    let sum = ops.iter().fold(ComplexMatrix::zeros(dim_in, dim_in), |acc, e| {
        &acc + &(&e.adjoint() * e)
    });
    Ok(sum.identity_defect())
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(ops, tol::CPTP)
    }

    pub fn with_tolerance(ops: Vec<ComplexMatrix>, tolerance: f64) -> Result<Self> {
        let (dim_out, dim_in) = operator_shape(&ops)?;
        let defect = completeness_defect(&ops)?;
        if defect > tolerance {
            return Err(Error::RejectedChannel { defect, tolerance });
        }
        Ok(Self { dim_in, dim_out, ops })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply_kraus(self, rho)
    }
}

pub fn apply_kraus(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != ch.dim_in {
        return Err(Error::DimensionMismatch {
            expected: ch.dim_in,
            found: rho.dim(),
        });
    }
    let out = ch
        .ops
        .iter()
        .fold(ComplexMatrix::zeros(ch.dim_out, ch.dim_out), |acc, e| {
            &acc + &rho.matrix().conjugate_by(e)
        });
    DensityMatrix::produced(out.hermitian_part())
}

/// Kraus form `E_λ = √w_λ K_λ`.
pub fn to_kraus(ch: &RandomUnitaryChannel) -> KrausChannel {
    let ops = ch
        .realizations
        .iter()
        .map(|(w, u)| u.matrix().scale(w.sqrt()))
        .collect();
    KrausChannel {
        dim_in: ch.dim,
        dim_out: ch.dim,
        ops,
    }
}

/// Comparison of the largest initial population `P_1` with the final spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub p1: f64,
    pub q1: f64,
    /// `p1 - q1`.
    pub margin: f64,
    /// `q1 <= p1 + 1e-9`.
    pub pass: bool,
    /// `Q_m <= P_1 + 1e-9` for each `m`.
    pub per_index: Vec<bool>,
}

pub fn theorem_check(rho_i: &DensityMatrix, rho_f: &DensityMatrix) -> Result<TheoremReport> {
    theorem_check_with(rho_i, rho_f, tol::THEOREM)
}

pub fn theorem_check_with(rho_i: &DensityMatrix, rho_f: &DensityMatrix, slack: f64) -> Result<TheoremReport> {
    if rho_i.dim() != rho_f.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho_i.dim(),
            found: rho_f.dim(),
        });
    }
    let p1 = rho_i.spectrum().largest();
    let q = rho_f.spectrum().probs();
    let q1 = q[0];
    Ok(TheoremReport {
        p1,
        q1,
        margin: p1 - q1,
        pass: q1 <= p1 + slack,
        per_index: q.iter().map(|&qm| qm <= p1 + slack).collect(),
    })
}
