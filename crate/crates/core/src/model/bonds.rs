use crate::molio::{Element, Molecule};

/// Bond when the distance is below this multiple of the covalent-radius sum.
pub const BOND_TOLERANCE: f64 = 1.25;

/// Distance-based bond perception for small molecules and fragments.
pub fn infer_covalent_bonds(molecule: &Molecule) -> Vec<(usize, usize)> {
    let atoms = &molecule.atoms;
    let mut bonds = Vec::new();
    for i in 0..atoms.len() {
        for j in (i + 1)..atoms.len() {
            let (a, b) = (&atoms[i], &atoms[j]);
            if a.element == Element::H && b.element == Element::H {
                continue;
            }
            let limit = BOND_TOLERANCE * (a.element.covalent_radius() + b.element.covalent_radius());
            if (a.position - b.position).norm() < limit {
                bonds.push((i, j));
            }
        }
    }
    bonds
}
