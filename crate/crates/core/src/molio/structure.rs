use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::element::Element;

/// (chain, residue sequence number) key used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueKey {
    pub chain: char,
    pub seq: i32,
}

impl ResidueKey {
    pub fn new(chain: char, seq: i32) -> Self {
        Self { chain, seq }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub serial: u32,
    pub name: String,
    pub residue_name: String,
    pub chain_id: char,
    pub residue_seq: i32,
    pub position: Vector3<f64>,
    pub element: Element,
    pub formal_charge: f64,
    pub hetero: bool,
}

impl Atom {
    pub fn residue_key(&self) -> ResidueKey {
        ResidueKey::new(self.chain_id, self.residue_seq)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residue {
    pub name: String,
    pub seq: i32,
    pub chain_id: char,
    /// Indices into [`Molecule::atoms`].
    pub atoms: Vec<usize>,
}

impl Residue {
    pub fn key(&self) -> ResidueKey {
        ResidueKey::new(self.chain_id, self.seq)
    }

    pub fn find<'m>(&self, molecule: &'m Molecule, name: &str) -> Option<&'m Atom> {
        self.atoms
            .iter()
            .map(|&i| &molecule.atoms[i])
            .find(|atom| atom.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Molecule {
    pub id: String,
    pub atoms: Vec<Atom>,
    pub residues: Vec<Residue>,
    pub bonds: Vec<(usize, usize)>,
}

impl Molecule {
    pub fn net_charge(&self) -> f64 {
        self.atoms.iter().map(|a| a.formal_charge).sum()
    }

    pub fn centroid(&self) -> Vector3<f64> {
        if self.atoms.is_empty() {
            return Vector3::zeros();
        }
        let sum = self
            .atoms
            .iter()
            .fold(Vector3::zeros(), |acc, atom| acc + atom.position);
        sum / self.atoms.len() as f64
    }

    pub fn residue(&self, key: ResidueKey) -> Option<&Residue> {
        self.residues.iter().find(|r| r.key() == key)
    }

    /// Translate so the geometric centroid of all atoms sits at the origin.
    pub fn center_at_origin(mut self) -> Molecule {
        let centroid = self.centroid();
        for atom in &mut self.atoms {
            atom.position -= centroid;
        }
        self
    }

    /// Translate so that `atom_index` sits at the origin (marker anchoring).
    pub fn anchor_at(mut self, atom_index: usize) -> Molecule {
        let anchor = self.atoms[atom_index].position;
        for atom in &mut self.atoms {
            atom.position -= anchor;
        }
        self
    }
}

pub fn center_at_origin(molecule: Molecule) -> Molecule {
    molecule.center_at_origin()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom_at(x: f64, y: f64, z: f64) -> Atom {
        Atom {
            serial: 1,
            name: "C".into(),
            residue_name: "LIG".into(),
            chain_id: 'A',
            residue_seq: 1,
            position: Vector3::new(x, y, z),
            element: Element::C,
            formal_charge: 0.0,
            hetero: true,
        }
    }

    fn molecule(atoms: Vec<Atom>) -> Molecule {
        let n = atoms.len();
        Molecule {
            id: "t".into(),
            atoms,
            residues: vec![Residue {
                name: "LIG".into(),
                seq: 1,
                chain_id: 'A',
                atoms: (0..n).collect(),
            }],
            bonds: vec![],
        }
    }

    #[test]
    fn single_atom_moves_to_origin() {
        let m = center_at_origin(molecule(vec![atom_at(5.0, 5.0, 5.0)]));
        assert_eq!(m.atoms[0].position, Vector3::zeros());
    }

    #[test]
    fn two_atoms_straddle_origin() {
        let m = center_at_origin(molecule(vec![atom_at(0.0, 0.0, 0.0), atom_at(2.0, 0.0, 0.0)]));
        assert_eq!(m.atoms[0].position, Vector3::new(-1.0, 0.0, 0.0));
        assert_eq!(m.atoms[1].position, Vector3::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn centering_is_idempotent() {
        let m = molecule(vec![
            atom_at(1.5, -2.0, 7.25),
            atom_at(-3.0, 4.0, 0.5),
            atom_at(10.0, 0.1, -9.0),
        ]);
        let once = m.center_at_origin();
        let twice = once.clone().center_at_origin();
        for (a, b) in once.atoms.iter().zip(&twice.atoms) {
            assert!((a.position - b.position).norm() < 1e-12);
        }
    }
}
