//! Fixed-column PDB reader and writer.
//!
//! Columns used (1-based, inclusive): record 1-6, serial 7-11, name 13-16,
//! altLoc 17, resName 18-20, chain 22, resSeq 23-26, iCode 27, x/y/z 31-54,
//! element 77-78. Only the first MODEL is read; altLoc other than ' ' or 'A'
//! is dropped.

use std::fmt::Write as _;

use nalgebra::Vector3;

use super::element::infer_element;
use super::structure::{Atom, Molecule, Residue};
use crate::error::{Error, Result};

fn column(line: &str, start: usize, end: usize) -> Option<&str> {
    let end = end.min(line.len());
    if start >= end {
        return None;
    }
    line.get(start..end)
}

fn parse_coord(line: &str, start: usize, lineno: usize, axis: char) -> Result<f64> {
    let field = column(line, start, start + 8).ok_or_else(|| Error::Parse {
        line: lineno,
        message: format!("missing {axis} coordinate"),
    })?;
    let value: f64 = field.trim().parse().map_err(|_| Error::Parse {
        line: lineno,
        message: format!("malformed {axis} coordinate `{}`", field.trim()),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line: lineno,
            message: format!("non-finite {axis} coordinate"),
        });
    }
    Ok(value)
}

pub fn parse_pdb(text: &str) -> Result<Molecule> {
    let mut id = String::from("unnamed");
    let mut atoms: Vec<Atom> = Vec::new();
    let mut residues: Vec<Residue> = Vec::new();
    let mut current: Option<(char, i32, char)> = None;
    let mut seen_model = false;

    for (index, line) in text.lines().enumerate() {
        let lineno = index + 1;
        let record = column(line, 0, 6).unwrap_or("").trim_end();
        match record {
            "HEADER" => {
                if let Some(code) = column(line, 62, 66).map(str::trim).filter(|c| !c.is_empty()) {
                    id = code.to_string();
                }
                continue;
            }
            "MODEL" => {
                if seen_model {
                    break;
                }
                seen_model = true;
                continue;
            }
            "ENDMDL" => break,
            "ATOM" | "HETATM" => {}
            _ => continue,
        }

        if !line.is_ascii() {
            return Err(Error::Parse {
                line: lineno,
                message: "non-ASCII characters in coordinate record".into(),
            });
        }
        let alt_loc = column(line, 16, 17).and_then(|s| s.chars().next()).unwrap_or(' ');
        if alt_loc != ' ' && alt_loc != 'A' {
            continue;
        }

        let raw_name = column(line, 12, 16).unwrap_or("");
        let name = raw_name.trim().to_string();
        if name.is_empty() {
            return Err(Error::Parse {
                line: lineno,
                message: "blank atom name".into(),
            });
        }
        let residue_name = column(line, 17, 20).unwrap_or("").trim().to_string();
        let chain_id = column(line, 21, 22).and_then(|s| s.chars().next()).unwrap_or(' ');
        let seq_field = column(line, 22, 26).unwrap_or("").trim();
        let residue_seq: i32 = seq_field.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("malformed residue number `{seq_field}`"),
        })?;
        let insertion = column(line, 26, 27).and_then(|s| s.chars().next()).unwrap_or(' ');
        let serial = column(line, 6, 11)
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(atoms.len() as u32 + 1);
        let x = parse_coord(line, 30, lineno, 'x')?;
        let y = parse_coord(line, 38, lineno, 'y')?;
        let z = parse_coord(line, 46, lineno, 'z')?;
        let element_column = column(line, 76, 78);
        let element = infer_element(raw_name, element_column, &residue_name).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;

        let key = (chain_id, residue_seq, insertion);
        if current != Some(key) {
            residues.push(Residue {
                name: residue_name.clone(),
                seq: residue_seq,
                chain_id,
                atoms: Vec::new(),
            });
            current = Some(key);
        }
        let residue = residues.last_mut().expect("pushed above");
        if residue.atoms.iter().any(|&i| atoms[i].name == name) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("duplicate atom `{name}` in residue {residue_name} {residue_seq}"),
            });
        }
        residue.atoms.push(atoms.len());
        atoms.push(Atom {
            serial,
            name,
            residue_name,
            chain_id,
            residue_seq,
            position: Vector3::new(x, y, z),
            element,
            formal_charge: 0.0,
            hetero: record == "HETATM",
        });
    }

    if atoms.is_empty() {
        return Err(Error::EmptyStructure);
    }
    Ok(Molecule {
        id,
        atoms,
        residues,
        bonds: Vec::new(),
    })
}

/// Serialize atoms back to fixed-column records (3-decimal coordinates).
pub fn write_pdb(molecule: &Molecule) -> String {
    let mut out = String::new();
    for atom in &molecule.atoms {
        let symbol = atom.element.symbol().to_ascii_uppercase();
        let name = if atom.name.len() < 4 && symbol.len() == 1 {
            format!(" {}", atom.name)
        } else {
            atom.name.clone()
        };
        let record = if atom.hetero { "HETATM" } else { "ATOM" };
        let _ = writeln!(
            out,
            "{record:<6}{:>5} {name:<4} {:>3} {}{:>4}    {:>8.3}{:>8.3}{:>8.3}{:>6.2}{:>6.2}          {symbol:>2}",
            atom.serial % 100_000,
            atom.residue_name,
            atom.chain_id,
            atom.residue_seq,
            atom.position.x,
            atom.position.y,
            atom.position.z,
            1.0,
            0.0,
        );
    }
    out.push_str("END\n");
    out
}
