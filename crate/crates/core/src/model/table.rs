use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::molio::Element;

const AMINO_ACIDS_TSV: &str = include_str!("../../data/amino_acids.tsv");
const BBSC_MAPPING_TSV: &str = include_str!("../../data/bbsc_mapping.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorClass {
    Hydrophobic,
    Negative,
    Positive,
    Polar,
    Element(Element),
}

impl ColorClass {
    pub fn color(self) -> &'static str {
        match self {
            ColorClass::Hydrophobic => "grey",
            ColorClass::Negative => "red",
            ColorClass::Positive => "blue",
            ColorClass::Polar => "green",
            ColorClass::Element(e) => e.cpk_color(),
        }
    }

    fn parse(s: &str) -> Option<ColorClass> {
        Some(match s {
            "hydrophobic" => ColorClass::Hydrophobic,
            "negative" => ColorClass::Negative,
            "positive" => ColorClass::Positive,
            "polar" => ColorClass::Polar,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AminoAcid {
    pub code: String,
    pub one_letter: char,
    /// Å³
    pub volume: f64,
    pub color_class: ColorClass,
    pub electrons: f64,
    pub side_chain_beads: usize,
}

/// How a residue volume turns into a bead radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusRule {
    /// `scale · V^(1/3)`.
    CubeRoot { scale: f64 },
    /// Radius of the sphere with volume V, `(3V / 4π)^(1/3)`.
    SphereEquivalent,
}

impl RadiusRule {
    pub fn radius(self, volume: f64) -> f64 {
        match self {
            RadiusRule::CubeRoot { scale } => scale * volume.cbrt(),
            RadiusRule::SphereEquivalent => (3.0 * volume / (4.0 * std::f64::consts::PI)).cbrt(),
        }
    }
}

/// Bead radius for alanine under the default cube-root rule, Å.
pub const ALANINE_BEAD_RADIUS: f64 = 2.4;

impl Default for RadiusRule {
    fn default() -> Self {
        let ala_volume = 88.6_f64;
        RadiusRule::CubeRoot {
            scale: ALANINE_BEAD_RADIUS / ala_volume.cbrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AminoAcidTable {
    entries: BTreeMap<String, AminoAcid>,
    side_chains: BTreeMap<String, Vec<(String, Vec<String>)>>,
}

impl AminoAcidTable {
    /// The bundled table (20 standard residues plus the side-chain partition).
    pub fn standard() -> &'static AminoAcidTable {
        static TABLE: OnceLock<AminoAcidTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            AminoAcidTable::parse(AMINO_ACIDS_TSV, BBSC_MAPPING_TSV).expect("bundled amino-acid tables are well formed")
        })
    }

    pub fn parse(amino_acids: &str, mapping: &str) -> Result<AminoAcidTable> {
        let mut entries = BTreeMap::new();
        for (lineno, fields) in data_rows(amino_acids) {
            let bad = |what: &str| Error::Parse {
                line: lineno,
                message: format!("amino-acid table: bad {what}"),
            };
            if fields.len() != 6 {
                return Err(bad("column count"));
            }
            let aa = AminoAcid {
                code: fields[0].to_string(),
                one_letter: fields[1].chars().next().ok_or_else(|| bad("one-letter code"))?,
                volume: fields[2].parse().map_err(|_| bad("volume"))?,
                color_class: ColorClass::parse(fields[3]).ok_or_else(|| bad("color class"))?,
                electrons: fields[4].parse().map_err(|_| bad("electron count"))?,
                side_chain_beads: fields[5].parse().map_err(|_| bad("bead count"))?,
            };
            if aa.volume <= 0.0 {
                return Err(bad("volume (must be positive)"));
            }
            entries.insert(aa.code.clone(), aa);
        }

        let mut side_chains: BTreeMap<String, Vec<(String, Vec<String>)>> = BTreeMap::new();
        for (lineno, fields) in data_rows(mapping) {
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: lineno,
                    message: "side-chain mapping: expected 3 columns".into(),
                });
            }
            side_chains.entry(fields[0].to_string()).or_default().push((
                fields[1].to_string(),
                fields[2].split(',').map(|s| s.trim().to_string()).collect(),
            ));
        }
        for (code, aa) in &entries {
            let mapped = side_chains.get(code).map_or(0, Vec::len);
            if mapped != aa.side_chain_beads {
                return Err(Error::Model(format!(
                    "{code}: table lists {} side-chain beads, mapping has {mapped}",
                    aa.side_chain_beads
                )));
            }
        }
        Ok(AminoAcidTable { entries, side_chains })
    }

    pub fn get(&self, code: &str) -> Option<&AminoAcid> {
        self.entries.get(code)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AminoAcid> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Side-chain beads of a residue as (label, atom names).
    pub fn side_chain_beads(&self, code: &str) -> &[(String, Vec<String>)] {
        self.side_chains.get(code).map_or(&[], Vec::as_slice)
    }

    /// Copy with TRP and TYR counted hydrophobic instead of polar.
    pub fn with_hydrophobic_aromatics(&self) -> AminoAcidTable {
        let mut table = self.clone();
        for code in ["TRP", "TYR"] {
            if let Some(aa) = table.entries.get_mut(code) {
                aa.color_class = ColorClass::Hydrophobic;
            }
        }
        table
    }

    /// Volume of the backbone unit, taken as the glycine residue volume.
    pub fn backbone_volume(&self) -> f64 {
        self.get("GLY").map_or(60.1, |g| g.volume)
    }
}

/// Electrons carried by the backbone bead: N, CA, C, O plus the amide H and HA.
pub const BACKBONE_ELECTRONS: f64 = 29.0;

fn data_rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split('\t').map(str::trim).collect()))
        }
    })
}
