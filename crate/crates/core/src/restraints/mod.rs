//! Binding-coordinate restraint and residue contact restraints.

mod binding;
mod contacts;

pub use binding::{anchor_opacity, BindingRestraint, ANCHOR_OPACITY, BASE_OPACITY, CLASH_OPACITY};
pub use contacts::{
    classify, contact_geometry, load_contacts, percentile, percentile_thresholds, satisfaction, Contact, ContactClass,
    ContactLine, ContactSet, ContactStyle, ResidueRef, Satisfaction,
};
