//! Render/physics bead models: atomistic spheres, one bead per residue at
//! CA, and 2-4 beads per residue (backbone + side chain).

mod bonds;
mod build;
mod table;

pub use bonds::{infer_covalent_bonds, BOND_TOLERANCE};
pub use build::{build_atomistic, build_bbsc, build_ca1, build_model, Bead, BeadModel, ElementRadii, Scheme};
pub use table::{AminoAcid, AminoAcidTable, ColorClass, RadiusRule, ALANINE_BEAD_RADIUS, BACKBONE_ELECTRONS};
