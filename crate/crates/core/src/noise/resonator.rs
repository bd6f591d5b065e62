//! Flux qubit coupled to a mechanical resonator, dephased by `θ_k a†a`.
//!
//! In the rotating-wave approximation the Hamiltonian splits into the ground
//! level `|0,g⟩` and 2×2 blocks spanned by `|n-1,e⟩, |n,g⟩` for `n >= 1`.
//! The dressed states of block `n` are
//! `|n+⟩ = cos α_n |n-1,e⟩ + sin α_n |n,g⟩` and
//! `|n-⟩ = sin α_n |n-1,e⟩ - cos α_n |n,g⟩`, with
//! `tan 2α_n = 2g√n / (Δ - ω_m)`. Noise on `a†a` acts inside each block, so a
//! block-diagonal state stays block diagonal.
//!
//! Block operators are written in the dressed basis `(|n+⟩, |n-⟩)`. The
//! off-diagonal element is `e^{-iθ(n-1)} (1 - e^{-iθ}) cos α sin α`; the form
//! with `cos²α sin²α` is not unitary. The first Bloch component
//! `μ1 = (1 - cos θ) sin 4α / 2` carries a factor ½ so that `Σ μ_j² = 1`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::spectral::diagonalize_hermitian_with;
use crate::tol;

use super::NoiseEnsemble;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MRParams {
    /// Resonator frequency `ω_m`.
    pub omega_m: f64,
    /// Qubit tunnelling amplitude `Δ`.
    pub delta: f64,
    /// Qubit-resonator coupling `g`.
    pub g: f64,
    /// Highest block index kept.
    pub n_max: usize,
}

impl MRParams {
    pub fn new(omega_m: f64, delta: f64, g: f64, n_max: usize) -> Result<Self> {
        let p = Self {
            omega_m,
            delta,
            g,
            n_max,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_m.is_finite() && self.delta.is_finite() && self.g.is_finite()) {
            return Err(invalid_input("resonator parameters must be finite"));
        }
        if self.g < 0.0 {
            return Err(invalid_input(format!("coupling must be >= 0, got {}", self.g)));
        }
        if self.n_max == 0 {
            return Err(invalid_input("truncation n_max must be at least 1"));
        }
        Ok(())
    }
}

/// `α_n = ½ atan2(2g√n, Δ - ω_m)`, continuous through resonance.
pub fn dressed_angle(n: usize, p: &MRParams) -> f64 {
    0.5 * (2.0 * p.g * (n as f64).sqrt()).atan2(p.delta - p.omega_m)
}

/// Block `n` of the realization with noise angle `theta`, in the dressed basis.
pub fn mr_block_kraus(n: usize, theta: f64, p: &MRParams) -> ComplexMatrix {
    let alpha = dressed_angle(n, p);
    let (s, c) = alpha.sin_cos();
    let global = Complex64::from_polar(1.0, -theta * (n as f64 - 1.0));
    let shift = Complex64::from_polar(1.0, -theta);
    let one = Complex64::new(1.0, 0.0);
    let e11 = global * (c * c + shift * (s * s));
    let e22 = global * (s * s + shift * (c * c));
    let e12 = global * (one - shift) * (c * s);
    ComplexMatrix::from_row_slice(2, 2, &[e11, e12, e12, e22]).expect("finite block")
}

/// The realization on the truncated space `|0,g⟩ ⊕ block_1 ⊕ … ⊕ block_{n_max}`.
pub fn mr_full_unitary(theta: f64, p: &MRParams) -> ComplexMatrix {
    let dim = 1 + 2 * p.n_max;
    let mut m = DMatrix::zeros(dim, dim);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    for n in 1..=p.n_max {
        let block = mr_block_kraus(n, theta, p);
        let o = 1 + 2 * (n - 1);
        for r in 0..2 {
            for c in 0..2 {
                m[(o + r, o + c)] = block.get(r, c);
            }
        }
    }
    ComplexMatrix::from_dmatrix(m).expect("finite entries")
}

/// Bloch components `(μ1, μ2, μ3)` of the rotated population axis of block `n`.
pub fn mr_mu(n: usize, theta: f64, p: &MRParams) -> [f64; 3] {
    let alpha = dressed_angle(n, p);
    let half = (theta / 2.0).sin();
    let s2 = (2.0 * alpha).sin();
    [
        (1.0 - theta.cos()) * (4.0 * alpha).sin() / 2.0,
        theta.sin() * s2,
        1.0 - 2.0 * half * half * s2 * s2,
    ]
}

/// `Y_n = Σ_j (Σ_k λ_k μ_j(θ_k))²`, clamped to `[0, 1]`.
pub fn mr_yn(ens: &NoiseEnsemble, n: usize, p: &MRParams) -> f64 {
    let mut avg = [0.0; 3];
    for (l, t) in ens.iter() {
        let mu = mr_mu(n, t, p);
        for j in 0..3 {
            avg[j] += l * mu[j];
        }
    }
    avg.iter().map(|a| a * a).sum::<f64>().min(1.0)
}

/// Final block populations `((P_n + X_n)/2, (P_n - X_n)/2)` with
/// `X_n = |P_1n - P_2n| √Y_n`, for a diagonal initial block.
pub fn mr_closed_form(ens: &NoiseEnsemble, n: usize, p: &MRParams, p1n: f64, p2n: f64) -> (f64, f64) {
    let x = (p1n - p2n).abs() * mr_yn(ens, n, p).sqrt();
    let total = p1n + p2n;
    ((total + x) / 2.0, (total - x) / 2.0)
}

/// Block-diagonal state: the `|0,g⟩` population and one 2×2 block per `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockState {
    p0: f64,
    blocks: Vec<ComplexMatrix>,
}

impl BlockState {
    pub fn new(p0: f64, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if !(p0.is_finite() && p0 >= -tol::EIGEN_CLAMP) {
            return Err(Error::InvalidState(format!("ground population {p0} is negative")));
        }
        let mut total = p0;
        for (k, b) in blocks.iter().enumerate() {
            if b.rows() != 2 || b.cols() != 2 {
                return Err(invalid_input(format!("block {} is not 2x2", k + 1)));
            }
            let eig = diagonalize_hermitian_with(b, tol::PRODUCED_STATE)
                .map_err(|e| Error::InvalidState(format!("block {}: {e}", k + 1)))?;
            if eig.values[1] < -tol::EIGEN_CLAMP {
                return Err(Error::InvalidState(format!("block {} is not positive", k + 1)));
            }
            total += b.trace().re;
        }
        if (total - 1.0).abs() > tol::PRODUCED_STATE {
            return Err(Error::InvalidState(format!("populations sum to {total}, not 1")));
        }
        Ok(Self { p0, blocks })
    }

    /// Diagonal blocks `diag(P_1n, P_2n)`.
    pub fn diagonal(p0: f64, populations: &[(f64, f64)]) -> Result<Self> {
        let blocks = populations
            .iter()
            .map(|&(a, b)| ComplexMatrix::from_real_diagonal(&[a, b]))
            .collect();
        Self::new(p0, blocks)
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn n_max(&self) -> usize {
        self.blocks.len()
    }

    /// `P_n = tr(block_n)` for `n = 1..=n_max`.
    pub fn block_traces(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.trace().re).collect()
    }
}

/// Evolves every block under the ensemble; `p0` is untouched.
pub fn mr_apply(ens: &NoiseEnsemble, state: &BlockState, p: &MRParams) -> Result<BlockState> {
    p.validate()?;
    if state.n_max() != p.n_max {
        return Err(Error::DimensionMismatch {
            expected: p.n_max,
            found: state.n_max(),
        });
    }
    let blocks = state
        .blocks
        .iter()
        .enumerate()
        .map(|(idx, rho)| {
            let n = idx + 1;
            ens.iter()
                .fold(ComplexMatrix::zeros(2, 2), |acc, (l, t)| {
                    &acc + &rho.conjugate_by(&mr_block_kraus(n, t, p)).scale(l)
                })
                .hermitian_part()
        })
        .collect();
    BlockState::new(state.p0, blocks)
}
