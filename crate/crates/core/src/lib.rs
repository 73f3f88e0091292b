//! Simulation and exact analytics for simple random walks on horizontally
//! oriented two-dimensional lattices.
//!
//! The lattice is `Z^2` with two-way vertical edges and one-way horizontal
//! lines whose direction at ordinate `y` is a sign `eps_y`. Depending on the
//! orientation sequence (alternating, half-plane, striped, or i.i.d. random)
//! the walk is recurrent or transient, and this crate provides both the
//! Monte Carlo side (environments, walkers, trajectory decomposition,
//! estimators) and the exact side (characteristic functions, return
//! probabilities, Green-sum integrals with singularity-aware quadrature).
//!
//! Modules map onto the pipeline:
//!
//! * [`env`] — orientation environments `eps_y` and their spec strings;
//! * [`walk`] — the lattice Markov chain, trajectory recording;
//! * [`decomp`] — vertical skeleton / waiting time / embedded walk
//!   decomposition of a trajectory, and its inverse;
//! * [`analytics`] — closed forms and quadrature for the alternating and
//!   half-plane lattices;
//! * [`estimators`] — seeded Monte Carlo estimators and statistical tests;
//! * [`verify`] — the invariant suite behind `orwalk verify`.

pub mod analytics;
pub mod decomp;
pub mod env;
mod error;
pub mod estimators;
pub mod quadrature;
pub mod rng;
pub mod stats;
pub mod verify;
pub mod walk;

pub use analytics::SpectralParams;
pub use decomp::{Decomposition, SkeletonView, VerticalIncrements};
pub use env::{OrientationEnvironment, Sign};
pub use error::{Error, Result};
pub use quadrature::QuadratureSpec;
pub use walk::{LatticeState, StepTag, Trajectory};

/// Coordinates are kept strictly below `2^62` in magnitude so that signed
/// arithmetic on them can never wrap silently.
pub const COORD_LIMIT: i64 = 1 << 62;
