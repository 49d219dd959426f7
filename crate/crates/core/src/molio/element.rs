use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chemical elements the engine knows how to draw and weigh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    H,
    C,
    N,
    O,
    F,
    Na,
    Mg,
    P,
    S,
    Cl,
    K,
    Ca,
    Mn,
    Fe,
    Cu,
    Zn,
    Se,
    Br,
    I,
}

// (symbol, atomic number, covalent radius Å, CPK color)
// Covalent radii: Cordero et al., Dalton Trans. 2008 (low-spin Fe).
const TABLE: &[(Element, &str, u32, f64, &str)] = &[
    (Element::H, "H", 1, 0.31, "white"),
    (Element::C, "C", 6, 0.76, "grey"),
    (Element::N, "N", 7, 0.71, "blue"),
    (Element::O, "O", 8, 0.66, "red"),
    (Element::F, "F", 9, 0.57, "lightgreen"),
    (Element::Na, "Na", 11, 1.66, "purple"),
    (Element::Mg, "Mg", 12, 1.41, "darkgreen"),
    (Element::P, "P", 15, 1.07, "orange"),
    (Element::S, "S", 16, 1.05, "yellow"),
    (Element::Cl, "Cl", 17, 1.02, "green"),
    (Element::K, "K", 19, 2.03, "purple"),
    (Element::Ca, "Ca", 20, 1.76, "darkgreen"),
    (Element::Mn, "Mn", 25, 1.39, "darkorange"),
    (Element::Fe, "Fe", 26, 1.32, "darkorange"),
    (Element::Cu, "Cu", 29, 1.32, "brown"),
    (Element::Zn, "Zn", 30, 1.22, "slategrey"),
    (Element::Se, "Se", 34, 1.20, "orange"),
    (Element::Br, "Br", 35, 1.20, "darkred"),
    (Element::I, "I", 53, 1.39, "darkviolet"),
];

impl Element {
    fn row(self) -> &'static (Element, &'static str, u32, f64, &'static str) {
        TABLE
            .iter()
            .find(|row| row.0 == self)
            .expect("every element has a table row")
    }

    pub fn symbol(self) -> &'static str {
        self.row().1
    }

    pub fn atomic_number(self) -> u32 {
        self.row().2
    }

    pub fn covalent_radius(self) -> f64 {
        self.row().3
    }

    pub fn cpk_color(self) -> &'static str {
        self.row().4
    }

    /// Case-insensitive symbol lookup ("FE", "fe" and "Fe" all give iron).
    pub fn from_symbol(symbol: &str) -> Option<Element> {
        let symbol = symbol.trim();
        TABLE
            .iter()
            .find(|row| row.1.eq_ignore_ascii_case(symbol))
            .map(|row| row.0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Element::from_symbol(s).ok_or_else(|| Error::UnknownElement(s.trim().to_string()))
    }
}

/// Residues whose atom names never start with a two-letter element.
const POLYMER_RESIDUES: &[&str] = &[
    "ALA", "ARG", "ASN", "ASP", "CYS", "GLN", "GLU", "GLY", "HIS", "ILE", "LEU", "LYS", "MET", "PHE", "PRO", "SER",
    "THR", "TRP", "TYR", "VAL", "HID", "HIE", "HIP", "CYX", "ACE", "NME", "DA", "DC", "DG", "DT", "A", "C", "G", "U",
];

/// Resolve an atom's element.
///
/// The element column wins when it holds a known symbol. Otherwise the atom
/// name is read with the PDB alignment rule: a raw 4-column name with a
/// leading blank is a one-letter element, a leading digit is skipped
/// (`1HB2`), 4-letter hydrogen names (`HD21`) are hydrogens. Inside standard
/// polymer residues the first letter decides (`CA` is carbon); in hetero
/// groups a leading known two-letter symbol is preferred (`CL1` is chlorine).
pub fn infer_element(atom_name: &str, element_column: Option<&str>, residue_name: &str) -> Result<Element> {
    if let Some(column) = element_column.map(str::trim).filter(|c| !c.is_empty()) {
        if let Some(element) = Element::from_symbol(column) {
            return Ok(element);
        }
    }

    if atom_name.trim().is_empty() {
        return Err(Error::UnknownElement(atom_name.to_string()));
    }

    let raw_aligned = atom_name.len() == 4 && atom_name.starts_with(' ');
    let letters: String = atom_name
        .trim()
        .trim_start_matches(|c: char| c.is_ascii_digit())
        .chars()
        .take_while(|c| c.is_ascii_alphabetic())
        .collect();
    let first = letters
        .get(..1)
        .ok_or_else(|| Error::UnknownElement(atom_name.trim().to_string()))?;

    let polymer = POLYMER_RESIDUES.contains(&residue_name.trim());
    let long_hydrogen = atom_name.trim().len() == 4 && letters.starts_with('H');
    if !raw_aligned && !polymer && !long_hydrogen && letters.len() >= 2 {
        if let Some(element) = Element::from_symbol(&letters[..2]) {
            return Ok(element);
        }
    }

    Element::from_symbol(first).ok_or_else(|| Error::UnknownElement(atom_name.trim().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_carbon_in_amino_acid_is_carbon() {
        assert_eq!(infer_element("CA", None, "ALA").unwrap(), Element::C);
    }

    #[test]
    fn element_column_wins() {
        assert_eq!(infer_element("FE", Some("FE"), "HEM").unwrap(), Element::Fe);
        assert_eq!(infer_element("CA", Some(" C"), "HEM").unwrap(), Element::C);
    }

    #[test]
    fn ligand_chlorine_from_name() {
        assert_eq!(infer_element("CL1", None, "VCL").unwrap(), Element::Cl);
    }

    #[test]
    fn aligned_raw_names() {
        assert_eq!(infer_element(" CAA", None, "HEM").unwrap(), Element::C);
        assert_eq!(infer_element("HD21", None, "ASN").unwrap(), Element::H);
        assert_eq!(infer_element("1HB ", None, "LIG").unwrap(), Element::H);
    }

    #[test]
    fn unknown_symbol_is_an_error() {
        assert!(matches!(
            infer_element("XQ", Some("XQ"), "LIG"),
            Err(Error::UnknownElement(_))
        ));
        assert!(infer_element("  ", None, "ALA").is_err());
    }

    #[test]
    fn symbols_round_trip() {
        for row in TABLE {
            assert_eq!(row.1.parse::<Element>().unwrap(), row.0);
        }
    }
}
