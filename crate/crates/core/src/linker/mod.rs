//! Flexible linker between two bodies: beads joined by fixed distances,
//! relaxed by position projection, with a worm-like-chain readout.

mod chain;
mod wlc;

pub use chain::{build_linker, step_linker, LinkerChain, Obstacle, SolverParams};
pub use wlc::{entropic_cost, extension_check, wlc_force, wlc_free_energy, Extension, WlcParams, EXTENSION_TOLERANCE};
