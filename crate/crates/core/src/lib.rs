//! Simulation and certification of random-unitary and Kraus channels.
//!
//! The central fact checked throughout the crate: a mixture of unitaries can
//! never raise the largest eigenvalue of a density matrix, so classical noise
//! alone cannot cool a system. General Kraus channels are certified against a
//! row-sum condition that is sufficient for the same conclusion.
//!
//! - [`state`], [`spectral`], [`random`], [`temperature`]: states, spectra, sampling.
//! - [`channels`]: channel types, application, propagators and certificates.
//! - [`noise`]: two-level rotations, the dressed resonator blocks and STIRAP transfer.
//! - [`experiments`]: seeded sweeps, scatter reproduction and the simplex optimizer.

pub mod channels;
pub mod error;
pub mod experiments;
pub mod matrix;
pub mod noise;
pub mod random;
pub mod rng;
pub mod spectral;
pub mod state;
pub mod temperature;
pub mod tol;

pub use error::{Error, Result};
pub use matrix::{Complex64, ComplexMatrix};
pub use rng::RngSeed;
pub use spectral::{diagonalize_hermitian, SortedSpectrum};
pub use state::{random_density_matrix, sorted_spectrum, DensityMatrix};
