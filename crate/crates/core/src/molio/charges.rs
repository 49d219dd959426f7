use super::structure::Molecule;

/// Options for [`assign_neutral_ph_charges_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ChargeOptions {
    /// Charge the chain termini (N-terminal N +1, C-terminal carboxylate -1).
    pub charged_termini: bool,
}

// Formal charges at pH 7. Carboxylate and guanidinium charges are shared
// evenly over the two equivalent atoms.
const SITES: &[(&str, &[(&str, f64)])] = &[
    ("LYS", &[("NZ", 1.0)]),
    ("ARG", &[("NH1", 0.5), ("NH2", 0.5)]),
    ("ASP", &[("OD1", -0.5), ("OD2", -0.5)]),
    ("GLU", &[("OE1", -0.5), ("OE2", -0.5)]),
];

const AMINO_ACIDS: &[&str] = &[
    "ALA", "ARG", "ASN", "ASP", "CYS", "GLN", "GLU", "GLY", "HIS", "ILE", "LEU", "LYS", "MET", "PHE", "PRO", "SER",
    "THR", "TRP", "TYR", "VAL",
];

pub fn assign_neutral_ph_charges(molecule: Molecule) -> Molecule {
    assign_neutral_ph_charges_with(molecule, ChargeOptions::default())
}

pub fn assign_neutral_ph_charges_with(mut molecule: Molecule, options: ChargeOptions) -> Molecule {
    for atom in &mut molecule.atoms {
        atom.formal_charge = 0.0;
    }
    for residue in &molecule.residues {
        let Some((_, sites)) = SITES.iter().find(|(name, _)| *name == residue.name) else {
            continue;
        };
        for &index in &residue.atoms {
            let atom = &mut molecule.atoms[index];
            if let Some((_, q)) = sites.iter().find(|(name, _)| *name == atom.name) {
                atom.formal_charge = *q;
            }
        }
    }

    if options.charged_termini {
        let mut chains: Vec<char> = molecule.residues.iter().map(|r| r.chain_id).collect();
        chains.dedup();
        for chain in chains {
            let polymer: Vec<usize> = molecule
                .residues
                .iter()
                .enumerate()
                .filter(|(_, r)| r.chain_id == chain && AMINO_ACIDS.contains(&r.name.as_str()))
                .map(|(i, _)| i)
                .collect();
            let (Some(&first), Some(&last)) = (polymer.first(), polymer.last()) else {
                continue;
            };
            let n_term = molecule.residues[first].clone();
            if let Some(&i) = n_term.atoms.iter().find(|&&i| molecule.atoms[i].name == "N") {
                molecule.atoms[i].formal_charge += 1.0;
            }
            let c_term = molecule.residues[last].clone();
            let oxygens: Vec<usize> = c_term
                .atoms
                .iter()
                .copied()
                .filter(|&i| matches!(molecule.atoms[i].name.as_str(), "O" | "OXT"))
                .collect();
            for &i in &oxygens {
                molecule.atoms[i].formal_charge += -1.0 / oxygens.len() as f64;
            }
        }
    }
    molecule
}
