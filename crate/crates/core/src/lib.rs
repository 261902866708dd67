//! Simulation toolkit for gravitationally induced time dilation in photonic
//! interferometry.
//!
//! The crate models a vertical Mach-Zehnder interferometer in a weak
//! Schwarzschild field. A photon wave packet travelling along the two arms
//! accumulates a differential proper time `dtau`, which both shifts the fringe
//! phase and, once `dtau` is comparable to the packet's coherence time, reduces
//! the fringe visibility. The modules mirror that pipeline:
//!
//! - [`spacetime`]: potentials, coordinate times, proper-time differentials and
//!   proper distances for a static weak-field metric.
//! - [`spectral`]: single-photon spectral amplitude modes and their shifted
//!   self-overlap, which controls visibility.
//! - [`interferometer`]: detection probabilities, fringe scans, visibility and
//!   distinguishability laws for different clock models.
//! - [`toy`]: competing mass-energy coupling Hamiltonians evolved on two-arm
//!   states, with fringe predictions per model.
//! - [`fock`]: an independent discrete-mode oracle that cross-checks the
//!   continuum predictions from first principles.
//! - [`franson`]: post-selected two-photon correlations, CHSH values and the
//!   delay-matching report for a Franson-type test.
//! - [`sweep`]: parameter sweeps, feasibility planners and the self-check
//!   suite behind the CLI.
//! - [`config`]: key = value configuration files for sweeps and Franson runs.

// Validation guards are written `!(x > 0.0)` on purpose: the negated form
// rejects NaN, which the "cleaner" `x <= 0.0` would wave through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Frozen reference values carry 17 significant digits so they reproduce the
// intended f64 bit pattern verbatim.
#![allow(clippy::excessive_precision)]

pub mod config;
pub mod constants;
pub mod error;
pub mod fock;
pub mod franson;
pub mod interferometer;
pub mod quad;
pub mod spacetime;
pub mod spectral;
pub mod sweep;
pub mod toy;

pub use error::{Error, Result};
