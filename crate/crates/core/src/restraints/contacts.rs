use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::BeadModel;
use crate::molio::ResidueKey;
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactClass {
    Low,
    Mid,
    High,
}

impl ContactClass {
    pub fn color(self) -> &'static str {
        match self {
            ContactClass::High => "green",
            ContactClass::Mid => "olive",
            ContactClass::Low => "red",
        }
    }
}

/// A residue named in a contact table: `A:45`, `45` or `45_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRef {
    pub chain: Option<char>,
    pub seq: i32,
}

impl ResidueRef {
    pub fn resolve(&self, model: &BeadModel) -> Option<usize> {
        match self.chain {
            Some(chain) => model.residue_anchor(ResidueKey::new(chain, self.seq)),
            None => model.residue_anchor_by_seq(self.seq),
        }
    }
}

impl FromStr for ResidueRef {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (chain, rest) = match s.split_once(':') {
            Some((c, rest)) => {
                let mut chars = c.chars();
                match (chars.next(), chars.next()) {
                    (Some(ch), None) => (Some(ch), rest),
                    _ => return Err(format!("bad chain in `{s}`")),
                }
            }
            None => (None, s),
        };
        let digits = rest.split('_').next().unwrap_or(rest);
        let seq = digits.parse().map_err(|_| format!("bad residue number in `{s}`"))?;
        Ok(Self { chain, seq })
    }
}

impl fmt::Display for ResidueRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.chain {
            Some(c) => write!(f, "{c}:{}", self.seq),
            None => write!(f, "{}", self.seq),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contact {
    pub res_a: ResidueRef,
    pub res_b: ResidueRef,
    pub score: f64,
    pub class: ContactClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactSet {
    pub contacts: Vec<Contact>,
    /// (t_high, t_mid).
    pub thresholds: [f64; 2],
    pub satisfaction_cutoff: f64,
}

impl ContactSet {
    pub fn len(&self) -> usize {
        self.contacts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contacts.is_empty()
    }

    pub fn lowest(&self) -> Option<&Contact> {
        self.contacts.iter().min_by(|a, b| a.score.total_cmp(&b.score))
    }

    /// World CA-like positions of both residues of every contact, if present.
    pub fn endpoints(
        &self,
        model_a: &BeadModel,
        world_a: &[Vec3],
        model_b: &BeadModel,
        world_b: &[Vec3],
    ) -> Vec<Option<(Vec3, Vec3)>> {
        self.contacts
            .iter()
            .map(|c| Some((world_a[c.res_a.resolve(model_a)?], world_b[c.res_b.resolve(model_b)?])))
            .collect()
    }
}

pub fn classify(score: f64, thresholds: [f64; 2]) -> ContactClass {
    if score >= thresholds[0] {
        ContactClass::High
    } else if score >= thresholds[1] {
        ContactClass::Mid
    } else {
        ContactClass::Low
    }
}

/// Linear-interpolated percentile (`p` in 0–100) of unsorted values.
pub fn percentile(values: &[f64], p: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = (p / 100.0).clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    sorted[lo] + (rank - lo as f64) * (sorted[hi] - sorted[lo])
}

/// 75th / 50th percentile of the scores.
pub fn percentile_thresholds(scores: &[f64]) -> [f64; 2] {
    [percentile(scores, 75.0), percentile(scores, 50.0)]
}

/// Parse `residue_A residue_B score` rows. One leading non-numeric header row
/// and `#` comments are skipped.
pub fn load_contacts(text: &str, thresholds: Option<[f64; 2]>, satisfaction_cutoff: f64) -> Result<ContactSet> {
    let mut rows = Vec::new();
    let mut seen_data = false;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |message: String| Error::Parse { line: n + 1, message };
        if fields.len() < 3 {
            return Err(bad(format!("expected 3 columns, got {}", fields.len())));
        }
        let score = match fields[2].parse::<f64>() {
            Ok(s) if s.is_finite() => s,
            Ok(s) => return Err(bad(format!("non-finite score {s}"))),
            Err(_) if !seen_data => {
                seen_data = true;
                continue;
            }
            Err(e) => return Err(bad(format!("score `{}`: {e}", fields[2]))),
        };
        seen_data = true;
        let res_a = fields[0].parse().map_err(bad)?;
        let res_b = fields[1].parse().map_err(bad)?;
        rows.push((res_a, res_b, score));
    }
    let thresholds = thresholds.unwrap_or_else(|| {
        let scores: Vec<f64> = rows.iter().map(|r| r.2).collect();
        if scores.is_empty() {
            [f64::INFINITY, f64::INFINITY]
        } else {
            percentile_thresholds(&scores)
        }
    });
    if thresholds[0] < thresholds[1] {
        return Err(Error::Config(format!(
            "contact thresholds out of order: {thresholds:?}"
        )));
    }
    Ok(ContactSet {
        contacts: rows
            .into_iter()
            .map(|(res_a, res_b, score)| Contact {
                res_a,
                res_b,
                score,
                class: classify(score, thresholds),
            })
            .collect(),
        thresholds,
        satisfaction_cutoff,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactStyle {
    pub d_sat: f64,
    pub d_far: f64,
    pub w_min: f64,
    pub w_max: f64,
}

impl Default for ContactStyle {
    fn default() -> Self {
        Self {
            d_sat: 8.0,
            d_far: 40.0,
            w_min: 0.02,
            w_max: 0.3,
        }
    }
}

impl ContactStyle {
    pub fn width(&self, d: f64) -> f64 {
        let t = ((d - self.d_sat) / (self.d_far - self.d_sat)).clamp(0.0, 1.0);
        self.w_min + (self.w_max - self.w_min) * t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactLine {
    pub from: Vec3,
    pub to: Vec3,
    pub distance: f64,
    pub color: String,
    pub width: f64,
    pub class: ContactClass,
}

pub fn contact_geometry(contact: &Contact, endpoints: (Vec3, Vec3), style: &ContactStyle) -> ContactLine {
    let (from, to) = endpoints;
    let distance = (from - to).norm();
    ContactLine {
        from,
        to,
        distance,
        color: contact.class.color().to_string(),
        width: style.width(distance),
        class: contact.class,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Satisfaction {
    /// Over resolvable contacts; `None` when none resolve.
    pub fraction: Option<f64>,
    pub distances: Vec<Option<f64>>,
    pub satisfied: Vec<Option<bool>>,
}

pub fn satisfaction(set: &ContactSet, endpoints: &[Option<(Vec3, Vec3)>]) -> Satisfaction {
    let distances: Vec<Option<f64>> = endpoints.iter().map(|e| e.map(|(a, b)| (a - b).norm())).collect();
    let satisfied: Vec<Option<bool>> = distances
        .iter()
        .map(|d| d.map(|d| d < set.satisfaction_cutoff))
        .collect();
    let resolved = satisfied.iter().flatten().count();
    let hits = satisfied.iter().flatten().filter(|&&s| s).count();
    Satisfaction {
        fraction: (resolved > 0).then(|| hits as f64 / resolved as f64),
        distances,
        satisfied,
    }
}
