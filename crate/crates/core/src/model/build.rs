use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bonds::infer_covalent_bonds;
use super::table::{AminoAcidTable, ColorClass, RadiusRule, BACKBONE_ELECTRONS};
use crate::error::{Error, Result};
use crate::molio::{Element, Molecule, ResidueKey};
use crate::Vec3;

pub use crate::molio::scene_config::Scheme;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bead {
    /// `chain:seq:label`, e.g. `A:12:NZ`, `A:12:CA1`, `A:12:BB`.
    pub id: String,
    /// Atom name, `CA1`, `BB` or `SC1`..`SC3`.
    pub label: String,
    /// Å, molecule frame.
    pub center: Vec3,
    /// Å.
    pub radius: f64,
    pub color_class: ColorClass,
    pub opacity: f64,
    pub residue: Option<ResidueKey>,
    pub residue_name: String,
    /// SAXS form factor (electrons).
    pub electrons: f64,
    pub charge: f64,
    pub element: Option<Element>,
}

impl Bead {
    pub fn color(&self) -> &'static str {
        self.color_class.color()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeadModel {
    pub beads: Vec<Bead>,
    pub bonds: Vec<(usize, usize)>,
    pub scheme: Scheme,
    /// Display coordinates are Å coordinates divided by `zoom`.
    pub zoom: f64,
    /// Bead standing in for each residue's CA (CA atom, CA1 bead or BB bead).
    residue_anchor: BTreeMap<ResidueKey, usize>,
}

impl BeadModel {
    pub fn new(beads: Vec<Bead>, bonds: Vec<(usize, usize)>, scheme: Scheme, zoom: f64) -> Self {
        let mut residue_anchor = BTreeMap::new();
        for (i, bead) in beads.iter().enumerate() {
            if let Some(key) = bead.residue {
                if matches!(bead.label.as_str(), "CA" | "CA1" | "BB") {
                    residue_anchor.entry(key).or_insert(i);
                }
            }
        }
        Self {
            beads,
            bonds,
            scheme,
            zoom,
            residue_anchor,
        }
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    pub fn display_center(&self, index: usize) -> Vec3 {
        self.beads[index].center / self.zoom
    }

    pub fn display_radius(&self, index: usize) -> f64 {
        self.beads[index].radius / self.zoom
    }

    /// Index of the CA-like bead of a residue.
    pub fn residue_anchor(&self, key: ResidueKey) -> Option<usize> {
        self.residue_anchor.get(&key).copied()
    }

    /// First residue anchor with this sequence number, any chain.
    pub fn residue_anchor_by_seq(&self, seq: i32) -> Option<usize> {
        self.residue_anchor
            .iter()
            .find(|(key, _)| key.seq == seq)
            .map(|(_, &i)| i)
    }

    /// Find a bead by residue and/or label.
    pub fn find(&self, chain: Option<char>, seq: Option<i32>, label: Option<&str>) -> Option<usize> {
        if label.is_none() {
            if let Some(seq) = seq {
                return match chain {
                    Some(chain) => self.residue_anchor(ResidueKey::new(chain, seq)),
                    None => self.residue_anchor_by_seq(seq),
                };
            }
        }
        self.beads.iter().position(|bead| {
            let residue_ok = match (bead.residue, chain, seq) {
                (Some(key), c, s) => c.is_none_or(|c| c == key.chain) && s.is_none_or(|s| s == key.seq),
                (None, None, None) => true,
                _ => false,
            };
            residue_ok && label.is_none_or(|l| bead.label == l)
        })
    }
}

/// Display radii (display units) for atomistic spheres.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementRadii {
    pub hydrogen: f64,
    pub heavy: f64,
    pub overrides: BTreeMap<Element, f64>,
}

impl Default for ElementRadii {
    fn default() -> Self {
        Self {
            hydrogen: 0.2,
            heavy: 0.4,
            overrides: BTreeMap::new(),
        }
    }
}

impl ElementRadii {
    pub fn display_radius(&self, element: Element) -> f64 {
        if let Some(&r) = self.overrides.get(&element) {
            return r;
        }
        if element == Element::H {
            self.hydrogen
        } else {
            self.heavy
        }
    }
}

fn bead_id(key: ResidueKey, label: &str) -> String {
    format!("{}:{}:{}", key.chain, key.seq, label)
}

/// One sphere per atom, element-colored, radius from the display table × zoom.
pub fn build_atomistic(molecule: &Molecule, zoom: f64, radii: &ElementRadii) -> BeadModel {
    let beads = molecule
        .atoms
        .iter()
        .map(|atom| Bead {
            id: bead_id(atom.residue_key(), &atom.name),
            label: atom.name.clone(),
            center: atom.position,
            radius: radii.display_radius(atom.element) * zoom,
            color_class: ColorClass::Element(atom.element),
            opacity: 1.0,
            residue: Some(atom.residue_key()),
            residue_name: atom.residue_name.clone(),
            electrons: atom.element.atomic_number() as f64,
            charge: atom.formal_charge,
            element: Some(atom.element),
        })
        .collect();
    let bonds = if molecule.bonds.is_empty() {
        infer_covalent_bonds(molecule)
    } else {
        molecule.bonds.clone()
    };
    BeadModel::new(beads, bonds, Scheme::Atomistic, zoom)
}

fn residue_charge(molecule: &Molecule, atoms: &[usize]) -> f64 {
    atoms.iter().map(|&i| molecule.atoms[i].formal_charge).sum()
}

fn chain_bonds(beads: &[(usize, ResidueKey)]) -> Vec<(usize, usize)> {
    beads
        .windows(2)
        .filter(|w| w[0].1.chain == w[1].1.chain)
        .map(|w| (w[0].0, w[1].0))
        .collect()
}

/// One bead per residue at its CA, radius from the residue volume, trace bonds
/// between consecutive residues of a chain.
pub fn build_ca1(molecule: &Molecule, zoom: f64, table: &AminoAcidTable, rule: RadiusRule) -> Result<BeadModel> {
    let mut beads = Vec::with_capacity(molecule.residues.len());
    let mut trace = Vec::with_capacity(molecule.residues.len());
    for residue in &molecule.residues {
        let ca = residue.find(molecule, "CA").ok_or_else(|| {
            Error::Model(format!(
                "residue {} {}{} has no CA atom",
                residue.name, residue.chain_id, residue.seq
            ))
        })?;
        let aa = table
            .get(&residue.name)
            .ok_or_else(|| Error::Model(format!("residue {} is not in the amino-acid table", residue.name)))?;
        trace.push((beads.len(), residue.key()));
        beads.push(Bead {
            id: bead_id(residue.key(), "CA1"),
            label: "CA1".into(),
            center: ca.position,
            radius: rule.radius(aa.volume),
            color_class: aa.color_class,
            opacity: 1.0,
            residue: Some(residue.key()),
            residue_name: residue.name.clone(),
            electrons: aa.electrons,
            charge: residue_charge(molecule, &residue.atoms),
            element: None,
        });
    }
    Ok(BeadModel::new(beads, chain_bonds(&trace), Scheme::Ca1, zoom))
}

/// One backbone bead per residue plus 0-3 side-chain beads from the mapping
/// table. Backbone radius uses the glycine volume; each side-chain bead gets
/// an equal share of the remaining residue volume and electrons.
pub fn build_bbsc(molecule: &Molecule, zoom: f64, table: &AminoAcidTable, rule: RadiusRule) -> Result<BeadModel> {
    let mut beads = Vec::new();
    let mut bonds = Vec::new();
    let mut backbone = Vec::new();
    let centroid = |names: &[&str], residue: &crate::molio::Residue| -> Option<(Vec3, Vec<usize>)> {
        let found: Vec<usize> = residue
            .atoms
            .iter()
            .copied()
            .filter(|&i| names.contains(&molecule.atoms[i].name.as_str()))
            .collect();
        if found.is_empty() {
            return None;
        }
        let sum = found
            .iter()
            .fold(Vec3::zeros(), |acc, &i| acc + molecule.atoms[i].position);
        Some((sum / found.len() as f64, found))
    };

    for residue in &molecule.residues {
        for required in ["N", "CA", "C"] {
            if residue.find(molecule, required).is_none() {
                return Err(Error::Model(format!(
                    "residue {} {}{} is missing backbone atom {required}",
                    residue.name, residue.chain_id, residue.seq
                )));
            }
        }
        let aa = table
            .get(&residue.name)
            .ok_or_else(|| Error::Model(format!("residue {} is not in the amino-acid table", residue.name)))?;
        let (bb_center, bb_atoms) = centroid(&["N", "CA", "C", "O"], residue).expect("backbone atoms checked above");
        let bb_index = beads.len();
        backbone.push((bb_index, residue.key()));
        beads.push(Bead {
            id: bead_id(residue.key(), "BB"),
            label: "BB".into(),
            center: bb_center,
            radius: rule.radius(table.backbone_volume()),
            color_class: aa.color_class,
            opacity: 1.0,
            residue: Some(residue.key()),
            residue_name: residue.name.clone(),
            electrons: BACKBONE_ELECTRONS,
            charge: residue_charge(molecule, &bb_atoms),
            element: None,
        });

        let groups = table.side_chain_beads(&residue.name);
        if groups.is_empty() {
            continue;
        }
        let sc_volume = (aa.volume - table.backbone_volume()).max(1.0) / groups.len() as f64;
        let sc_electrons = (aa.electrons - BACKBONE_ELECTRONS) / groups.len() as f64;
        let mut previous = bb_index;
        for (label, names) in groups {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let Some((center, atoms)) = centroid(&names, residue) else {
                continue;
            };
            let index = beads.len();
            beads.push(Bead {
                id: bead_id(residue.key(), label),
                label: label.clone(),
                center,
                radius: rule.radius(sc_volume),
                color_class: aa.color_class,
                opacity: 1.0,
                residue: Some(residue.key()),
                residue_name: residue.name.clone(),
                electrons: sc_electrons,
                charge: residue_charge(molecule, &atoms),
                element: None,
            });
            bonds.push((previous, index));
            previous = index;
        }
    }
    bonds.extend(chain_bonds(&backbone));
    bonds.sort_unstable();
    Ok(BeadModel::new(beads, bonds, Scheme::Bbsc, zoom))
}

/// Dispatch on the configured scheme with the default radius rules.
pub fn build_model(molecule: &Molecule, scheme: Scheme, zoom: f64) -> Result<BeadModel> {
    let table = AminoAcidTable::standard();
    match scheme {
        Scheme::Atomistic => Ok(build_atomistic(molecule, zoom, &ElementRadii::default())),
        Scheme::Ca1 => build_ca1(molecule, zoom, table, RadiusRule::default()),
        Scheme::Bbsc => build_bbsc(molecule, zoom, table, RadiusRule::default()),
    }
}
