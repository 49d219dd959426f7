//! Structure input: PDB parsing, element inference, pH 7 charges, centering,
//! and the JSON scene description.

mod charges;
mod element;
mod pdb;
pub mod scene_config;
mod structure;

pub use charges::{assign_neutral_ph_charges, assign_neutral_ph_charges_with, ChargeOptions};
pub use element::{infer_element, Element};
pub use pdb::{parse_pdb, write_pdb};
pub use scene_config::SceneConfig;
pub use structure::{center_at_origin, Atom, Molecule, Residue, ResidueKey};
