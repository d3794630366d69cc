//! Entanglement entropy of free fermions whose one-body Hamiltonian is a
//! large random matrix.
//!
//! The crate provides the full pipeline: sample an ensemble (GUE, Haar
//! unitary, i.i.d. matrices, or the deterministic Kac model), diagonalize,
//! build the Fermi projection, restrict it to a block, and evaluate the
//! entanglement entropy together with its two-sided bounds. The `theory`
//! module carries the matching closed-form limit laws (semicircle, Wachter,
//! Marchenko-Pastur) and Page's formulas, and `radiation` runs the
//! random-pure-state experiments.
//!
//! Everything is deterministic given a master seed: per-realization RNG
//! streams make ensemble runs reproduce bit-for-bit at any worker count.

pub mod ensembles;
pub mod error;
pub mod exec;
pub mod fermion;
pub mod quad;
pub mod radiation;
pub mod spectral;
pub mod stats;
pub mod theory;

pub use error::{Error, Result};
pub use fermion::EntropyBase;
