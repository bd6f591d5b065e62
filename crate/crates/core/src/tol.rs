//! Numerical tolerances shared across the crate.
//!
//! Every check that takes a tolerance has a variant accepting a [`Tolerances`]
//! value; the plain variants use [`Tolerances::default`].

/// Entrywise Hermiticity defect accepted for input states and Hamiltonians.
pub const HERMITIAN: f64 = 1e-12;
/// Trace defect accepted for input states.
pub const TRACE: f64 = 1e-12;
/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are rounded to zero; anything lower is a violation.
pub const EIGEN_CLAMP: f64 = 1e-10;
/// Defect accepted for states produced by channel application.
pub const PRODUCED_STATE: f64 = 1e-10;
/// Unitarity defect `max |U†U - I|`.
pub const UNITARY: f64 = 1e-10;
/// Completeness defect `max |Σ E†E - I|`.
pub const CPTP: f64 = 1e-10;
/// Probability weights must sum to one within this.
pub const WEIGHT_SUM: f64 = 1e-12;
/// Slack on `Q_m <= P_1` in theorem checks and sweeps.
pub const THEOREM: f64 = 1e-9;
/// Slack on temperature monotonicity.
pub const TEMPERATURE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub eigen_clamp: f64,
    pub unitary: f64,
    pub cptp: f64,
    pub weight_sum: f64,
    pub theorem: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN,
            trace: TRACE,
            eigen_clamp: EIGEN_CLAMP,
            unitary: UNITARY,
            cptp: CPTP,
            weight_sum: WEIGHT_SUM,
            theorem: THEOREM,
        }
    }
}

impl Tolerances {
    /// Looser tolerances applied to states that come out of a channel.
    pub fn produced() -> Self {
        Self {
            hermitian: PRODUCED_STATE,
            trace: PRODUCED_STATE,
            ..Self::default()
        }
    }
}
