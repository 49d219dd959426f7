//! Steerable two-body molecular modeling engine.
//!
//! Two molecules ride on tracked markers (or any other 6-DoF input). Every
//! tick the [`engine::Engine`] turns their poses into world coordinates and
//! evaluates the enabled observables: clashes, electrostatics, hydrogen bonds
//! and stochastic proton transfer, Diels–Alder progress, pseudocontact shifts
//! with a simulated spectrum, residue-level Debye SAXS with a fit metric,
//! contact restraints, binding restraints and a flexible linker with a
//! worm-like-chain readout. Results come out as a [`engine::FrameState`].
//!
//! Hosts either drive the engine directly, replay recorded trajectories with
//! [`replay`], or go through the flat handle-based [`bridge`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bridge;
pub mod engine;
pub mod error;
pub mod interact;
pub mod linker;
pub mod model;
pub mod molio;
pub mod observables;
pub mod replay;
pub mod restraints;
pub mod scene;

pub use error::{Error, Result};

/// 3-vector in Å (world or molecule frame) unless stated otherwise.
pub type Vec3 = nalgebra::Vector3<f64>;
