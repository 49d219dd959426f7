//! Pairwise chemistry between two steered bodies.

mod clash;
mod electro;
mod geometry;
mod proton;
mod reaction;

pub use clash::{detect_clashes, detect_clashes_brute_force, halo_opacities, ClashPair, ClashReport};
pub use electro::{electrostatic_term, ChargedPair};
pub use geometry::{dashed_line, key_distance, DEFAULT_DASHED_POINTS};
pub use proton::{hbond_candidate, proton_transfer_step, HBond, ProtonParams, ProtonState, Site};
pub use reaction::{
    diels_alder_progress, diels_alder_step, product_topology, FaceSign, ProductTopology, ReactionGeometry,
    ReactionParams, ReactionState,
};
