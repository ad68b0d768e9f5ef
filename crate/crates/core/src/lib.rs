//! Exact diagonalization and entanglement measures for two quantum dots coupled through a
//! Majorana nanowire.
//!
//! The eight-state Fock space splits into two parity blocks of four. Ground and thermal
//! states are reduced over the Majorana mode to a two-dot state, whose fermionic
//! negativity, concurrence and mutual information are then evaluated.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod exec;
pub mod linalg;
pub mod model;
pub mod negativity;
pub mod optimize;
pub mod states;
pub mod thermal;

pub use model::{ModelParams, UnitConvention};
pub use states::{DensityMatrix, TieRule, WaveFunction};
