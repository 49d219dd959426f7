use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Switchable per-tick features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    Clash,
    Electrostatics,
    Proton,
    Reaction,
    Pcs,
    Saxs,
    Contacts,
    Restraint,
    Linker,
}

impl Feature {
    pub const ALL: [Feature; 9] = [
        Feature::Clash,
        Feature::Electrostatics,
        Feature::Proton,
        Feature::Reaction,
        Feature::Pcs,
        Feature::Saxs,
        Feature::Contacts,
        Feature::Restraint,
        Feature::Linker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Clash => "clash",
            Feature::Electrostatics => "electrostatics",
            Feature::Proton => "proton",
            Feature::Reaction => "reaction",
            Feature::Pcs => "pcs",
            Feature::Saxs => "saxs",
            Feature::Contacts => "contacts",
            Feature::Restraint => "restraint",
            Feature::Linker => "linker",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

macro_rules! scalars {
    ($( $variant:ident => ($name:literal, $unit:literal, $feature:ident, $doc:literal) ),+ $(,)?) => {
        /// Every scalar readout a frame can carry.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum Scalar {
            $( #[doc = $doc] $variant ),+
        }

        impl Scalar {
            pub const ALL: &'static [Scalar] = &[$( Scalar::$variant ),+];

            pub fn name(self) -> &'static str {
                match self { $( Scalar::$variant => $name ),+ }
            }

            pub fn unit(self) -> &'static str {
                match self { $( Scalar::$variant => $unit ),+ }
            }

            pub fn feature(self) -> Feature {
                match self { $( Scalar::$variant => Feature::$feature ),+ }
            }

            pub fn description(self) -> &'static str {
                match self { $( Scalar::$variant => $doc ),+ }
            }
        }
    };
}

scalars! {
    ClashActive => ("clash", "flag", Clash, "1 while any cross-body pair is inside the cutoff."),
    ClashCount => ("clash_count", "count", Clash, "Cross-body bead pairs closer than the clash cutoff."),
    ClashMinDistance => ("clash_min_distance", "Å", Clash, "Smallest cross-body bead distance."),
    Electrostatics => ("electrostatics", "score", Electrostatics, "Sum of k·qi·qj/d² over charged pairs."),
    ProtonHolder => ("proton_holder", "code", Proton, "0 = donor site, 1 = acceptor site."),
    ProtonDistance => ("proton_distance", "Å", Proton, "Proton to receiving heavy atom."),
    ProtonHops => ("proton_hops", "count", Proton, "Transfers since the last reset."),
    HbondShown => ("hbond_shown", "flag", Proton, "1 while the proton–receiver distance is inside the H-bond window."),
    ReactionProgress => ("reaction_progress", "fraction", Reaction, "New-bond intensity p."),
    ReactionFormed => ("reaction_formed", "flag", Reaction, "1 once the product has formed."),
    ReactionFace => ("reaction_face", "code", Reaction, "Latched approach face: 1, -1, or 0 while undetermined."),
    ReactionD1 => ("reaction_d1", "Å", Reaction, "First forming bond distance."),
    ReactionD2 => ("reaction_d2", "Å", Reaction, "Second forming bond distance."),
    PcsShift => ("pcs_shift", "ppm", Pcs, "Observed shift: diamagnetic plus pseudocontact."),
    PcsLinewidth => ("pcs_linewidth", "Hz", Pcs, "Line width with paramagnetic broadening."),
    PcsR => ("pcs_r", "Å", Pcs, "Probe distance from the metal."),
    PcsTheta => ("pcs_theta", "rad", Pcs, "Polar angle in the tensor frame."),
    PcsPhi => ("pcs_phi", "rad", Pcs, "Azimuth in the tensor frame."),
    SaxsChi => ("saxs_chi", "dimensionless", Saxs, "Fit quality against the reference profile."),
    SaxsScale => ("saxs_scale", "dimensionless", Saxs, "Optimal scale of the calculated profile."),
    ContactSatisfaction => ("contact_satisfaction", "fraction", Contacts, "Share of resolvable contacts within the cutoff."),
    ContactsResolved => ("contacts_resolved", "count", Contacts, "Contacts whose residues were found."),
    RestraintDistance => ("restraint_distance", "Å", Restraint, "Anchor–anchor distance after this tick's nudge."),
    RestraintOffset => ("restraint_offset", "display", Restraint, "Length of the accumulated pose offset."),
    LinkerSeparation => ("linker_separation", "Å", Linker, "Anchor–anchor distance."),
    LinkerMaxResidual => ("linker_max_residual", "Å", Linker, "Largest bond-length error after the solve."),
    LinkerExtension => ("linker_extension", "code", Linker, "0 = slack, 1 = taut, 2 = overstretched."),
    LinkerForce => ("linker_force", "pN", Linker, "Worm-like-chain force at the anchor separation."),
    LinkerFreeEnergy => ("linker_free_energy", "pN·Å", Linker, "Worm-like-chain extension work."),
    LinkerEntropicCost => ("linker_entropic_cost", "kT", Linker, "−F/kT."),
}

impl Scalar {
    pub fn from_name(name: &str) -> Option<Scalar> {
        Scalar::ALL.iter().copied().find(|s| s.name() == name)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// One optional value per [`Scalar`]; `None` when the feature is off or failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "BTreeMap<String, Option<f64>>", try_from = "BTreeMap<String, Option<f64>>")]
pub struct Readouts {
    values: Vec<Option<f64>>,
}

impl Default for Readouts {
    fn default() -> Self {
        Self {
            values: vec![None; Scalar::ALL.len()],
        }
    }
}

impl Readouts {
    pub fn get(&self, scalar: Scalar) -> Option<f64> {
        self.values[scalar.index()]
    }

    pub fn set(&mut self, scalar: Scalar, value: f64) {
        self.values[scalar.index()] = Some(value);
    }

    pub fn set_opt(&mut self, scalar: Scalar, value: Option<f64>) {
        self.values[scalar.index()] = value;
    }

    pub fn clear_feature(&mut self, feature: Feature) {
        for s in Scalar::ALL.iter().filter(|s| s.feature() == feature) {
            self.values[s.index()] = None;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Scalar, Option<f64>)> + '_ {
        Scalar::ALL.iter().map(|&s| (s, self.values[s.index()]))
    }
}

impl From<Readouts> for BTreeMap<String, Option<f64>> {
    fn from(r: Readouts) -> Self {
        r.iter().map(|(s, v)| (s.name().to_string(), v)).collect()
    }
}

impl TryFrom<BTreeMap<String, Option<f64>>> for Readouts {
    type Error = String;

    fn try_from(map: BTreeMap<String, Option<f64>>) -> Result<Self, Self::Error> {
        let mut r = Readouts::default();
        for (name, value) in map {
            let s = Scalar::from_name(&name).ok_or_else(|| format!("unknown readout `{name}`"))?;
            r.set_opt(s, value);
        }
        Ok(r)
    }
}
