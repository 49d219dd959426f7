//! JSON scene description: which molecules ride on which marker, how they are
//! drawn, and which per-tick features run with what parameters.
//!
//! External files (`{"path": ...}`) are resolved relative to the scene file
//! and inlined by [`SceneConfig::from_path`], so a loaded config is
//! self-contained and can be handed to the bridge as bytes.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Path(String),
    Inline(String),
}

impl Source {
    pub fn text(&self) -> Result<&str> {
        match self {
            Source::Inline(text) => Ok(text),
            Source::Path(path) => Err(Error::Config(format!(
                "source `{path}` was not resolved; load the scene with SceneConfig::from_path"
            ))),
        }
    }

    fn resolve(&mut self, base: &Path) -> Result<()> {
        if let Source::Path(rel) = self {
            let path = base.join(&*rel);
            let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            *self = Source::Inline(text);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    Atomistic,
    Ca1,
    Bbsc,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Keep file coordinates.
    #[default]
    AsIs,
    /// Move the centroid of all atoms to the marker origin.
    Centroid,
    /// Move the named atom to the marker origin.
    Atom(Selector),
}

/// Names one bead of a body: by residue and/or atom (or bead label such as
/// `BB`, `SC1` for coarse-grained models).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selector {
    pub marker: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<char>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom: Option<String>,
}

impl Selector {
    pub fn atom(marker: &str, atom: &str) -> Self {
        Self {
            marker: marker.into(),
            chain: None,
            seq: None,
            atom: Some(atom.into()),
        }
    }

    pub fn residue(marker: &str, seq: i32) -> Self {
        Self {
            marker: marker.into(),
            chain: None,
            seq: Some(seq),
            atom: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoseConfig {
    /// Unit quaternion (w, x, y, z).
    #[serde(default = "identity_quat")]
    pub rotation: [f64; 4],
    /// Display units.
    #[serde(default)]
    pub translation: [f64; 3],
}

impl Default for PoseConfig {
    fn default() -> Self {
        Self {
            rotation: identity_quat(),
            translation: [0.0; 3],
        }
    }
}

fn identity_quat() -> [f64; 4] {
    [1.0, 0.0, 0.0, 0.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyConfig {
    pub marker: String,
    pub source: Source,
    #[serde(default)]
    pub scheme: Scheme,
    #[serde(default = "one")]
    pub zoom: f64,
    #[serde(default)]
    pub origin: Origin,
    #[serde(default)]
    pub charged_termini: bool,
    #[serde(default)]
    pub initial_pose: PoseConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyDistanceConfig {
    pub label: String,
    pub a: Selector,
    pub b: Selector,
    #[serde(default = "ten")]
    pub dashed_points: usize,
    #[serde(default = "yellow")]
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClashConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default = "three")]
    pub cutoff: f64,
    #[serde(default = "half")]
    pub halo_opacity: f64,
}

impl Default for ClashConfig {
    fn default() -> Self {
        Self {
            enabled: true,
            cutoff: 3.0,
            halo_opacity: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChargePairConfig {
    pub a: Selector,
    pub b: Selector,
    #[serde(default = "one")]
    pub coupling: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElectrostaticsConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    /// Explicit pairs; when absent every charged cross pair is used with coupling 1.
    #[serde(default)]
    pub pairs: Option<Vec<ChargePairConfig>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtonConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    /// Heavy atom on the first body that holds the proton initially.
    pub donor: Selector,
    /// The transferable hydrogen, bonded to `donor`.
    pub proton: Selector,
    /// Receiving heavy atom on the second body.
    pub acceptor: Selector,
    /// Stationary fractions (donor-held, acceptor-held).
    #[serde(default = "default_populations")]
    pub populations: [f64; 2],
    /// Base exchange rate, 1/s.
    #[serde(default = "two")]
    pub rate: f64,
    #[serde(default = "two")]
    pub gate: f64,
    #[serde(default = "default_hbond_window")]
    pub hbond_window: [f64; 2],
    /// X-H bond length used to place the proton on the acceptor side, Å.
    #[serde(default = "one")]
    pub bond_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReactionConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    /// Terminal diene carbons on the first body (C1, C4).
    pub diene_ends: [Selector; 2],
    /// Dienophile carbons on the second body bonding to C1 and C4 respectively.
    pub dienophile: [Selector; 2],
    /// Three atoms spanning the diene plane.
    pub diene_plane: [Selector; 3],
    #[serde(default = "four")]
    pub d_start: f64,
    #[serde(default = "default_d_form")]
    pub d_form: f64,
    #[serde(default = "default_latch")]
    pub latch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcsConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    /// Paramagnetic metal (tensor origin) on the tensor-carrying body.
    pub metal: Selector,
    pub probe: Selector,
    /// Axial anisotropy, 1e-32 m³.
    pub delta_chi_ax: f64,
    /// Rhombic anisotropy, 1e-32 m³.
    #[serde(default)]
    pub delta_chi_rh: f64,
    /// Orientation of the principal axes in the molecule frame (w, x, y, z).
    #[serde(default = "identity_quat")]
    pub frame: [f64; 4],
    /// Paramagnetic relaxation constant, Hz·Å⁶.
    #[serde(default = "default_pre_constant")]
    pub pre_constant: f64,
    #[serde(default = "default_baseline_width")]
    pub baseline_linewidth: f64,
    #[serde(default = "default_field")]
    pub field_mhz: f64,
    #[serde(default)]
    pub diamagnetic_shift: f64,
    #[serde(default = "default_spectrum_grid")]
    pub grid: GridConfig,
    #[serde(default = "default_noise")]
    pub noise_sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SaxsReferenceConfig {
    /// 3-column (q, I, σ) text profile.
    File(Source),
    /// Profile of the complex with the second body at `pose`, plus seeded noise.
    Synthetic {
        #[serde(default)]
        pose: PoseConfig,
        #[serde(default = "default_noise_a")]
        a: f64,
        #[serde(default = "default_noise_b_rel")]
        b_rel: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaxsConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default = "default_q_grid")]
    pub q: GridConfig,
    pub reference: SaxsReferenceConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactsConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    pub source: Source,
    /// Absolute (t_high, t_mid); percentile defaults when absent.
    #[serde(default)]
    pub thresholds: Option<[f64; 2]>,
    #[serde(default = "eight")]
    pub satisfaction_cutoff: f64,
    #[serde(default = "eight")]
    pub d_sat: f64,
    #[serde(default = "forty")]
    pub d_far: f64,
    #[serde(default = "default_w_min")]
    pub w_min: f64,
    #[serde(default = "default_w_max")]
    pub w_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestraintConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    pub anchor_a: Selector,
    pub anchor_b: Selector,
    #[serde(default)]
    pub target_distance: f64,
    /// Fraction of the distance error corrected per tick.
    #[serde(default = "default_eta")]
    pub rate: f64,
    /// Display units per tick.
    #[serde(default = "one")]
    pub max_step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkerConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    pub anchor_a: Selector,
    pub anchor_b: Selector,
    #[serde(default = "six")]
    pub beads: usize,
    #[serde(default = "default_bond")]
    pub bond_length: f64,
    /// Defaults to the glycine backbone bead radius of the coarse-grained table.
    #[serde(default)]
    pub bead_radius: Option<f64>,
    #[serde(default = "ten")]
    pub iterations: usize,
    #[serde(default = "default_damping")]
    pub damping: f64,
    #[serde(default = "default_persistence")]
    pub persistence_length: f64,
    /// Defaults to (beads + 1) · bond_length.
    #[serde(default)]
    pub contour_length: Option<f64>,
    /// pN·nm.
    #[serde(default = "default_kt")]
    pub kt: f64,
    #[serde(default)]
    pub self_collision: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Features {
    #[serde(default)]
    pub key_distances: Vec<KeyDistanceConfig>,
    #[serde(default)]
    pub clash: Option<ClashConfig>,
    #[serde(default)]
    pub electrostatics: Option<ElectrostaticsConfig>,
    #[serde(default)]
    pub proton: Option<ProtonConfig>,
    #[serde(default)]
    pub reaction: Option<ReactionConfig>,
    #[serde(default)]
    pub pcs: Option<PcsConfig>,
    #[serde(default)]
    pub saxs: Option<SaxsConfig>,
    #[serde(default)]
    pub contacts: Option<ContactsConfig>,
    #[serde(default)]
    pub restraint: Option<RestraintConfig>,
    #[serde(default)]
    pub linker: Option<LinkerConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub rng_seed: Option<u64>,
    pub bodies: Vec<BodyConfig>,
    #[serde(default)]
    pub features: Features,
}

impl SceneConfig {
    pub fn from_json(text: &str) -> Result<SceneConfig> {
        let config: SceneConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<SceneConfig> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Config(format!("scene is not UTF-8: {e}")))?;
        Self::from_json(text)
    }

    /// Read a scene file and inline every referenced file.
    pub fn from_path(path: impl AsRef<Path>) -> Result<SceneConfig> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config: SceneConfig = serde_json::from_str(&text)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        config.resolve_sources(base)?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene config always serializes")
    }

    pub fn resolve_sources(&mut self, base: &Path) -> Result<()> {
        for body in &mut self.bodies {
            body.source.resolve(base)?;
        }
        if let Some(contacts) = &mut self.features.contacts {
            contacts.source.resolve(base)?;
        }
        if let Some(SaxsConfig {
            reference: SaxsReferenceConfig::File(source),
            ..
        }) = &mut self.features.saxs
        {
            source.resolve(base)?;
        }
        Ok(())
    }

    pub fn body(&self, marker: &str) -> Option<&BodyConfig> {
        self.bodies.iter().find(|b| b.marker == marker)
    }

    pub fn needs_seed(&self) -> bool {
        let f = &self.features;
        f.proton.is_some()
            || f.pcs.as_ref().is_some_and(|p| p.noise_sigma > 0.0)
            || f.saxs
                .as_ref()
                .is_some_and(|s| matches!(s.reference, SaxsReferenceConfig::Synthetic { .. }))
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.bodies.is_empty() {
            return Err(Error::Config("at least one body is required".into()));
        }
        for (i, body) in self.bodies.iter().enumerate() {
            if !(body.zoom > 0.0 && body.zoom.is_finite()) {
                return Err(Error::Config(format!("body `{}`: zoom must be positive", body.marker)));
            }
            if self.bodies[..i].iter().any(|b| b.marker == body.marker) {
                return Err(Error::Config(format!(
                    "marker `{}` is used by more than one body",
                    body.marker
                )));
            }
        }
        if self.needs_seed() && self.rng_seed.is_none() {
            return Err(Error::Config(
                "rng_seed is required when a stochastic feature is enabled".into(),
            ));
        }
        let f = &self.features;
        let pairwise = !f.key_distances.is_empty()
            || f.clash.is_some()
            || f.electrostatics.is_some()
            || f.proton.is_some()
            || f.reaction.is_some()
            || f.contacts.is_some()
            || f.restraint.is_some()
            || f.linker.is_some()
            || f.pcs.is_some();
        if pairwise && self.bodies.len() != 2 {
            return Err(Error::Config("two-body features need exactly two bodies".into()));
        }
        if let Some(p) = &f.proton {
            let [a, b] = p.populations;
            if a < 0.0 || b < 0.0 || ((a + b) - 1.0).abs() > 1e-9 {
                return Err(Error::Config("proton populations must sum to 1".into()));
            }
            if p.rate <= 0.0 {
                return Err(Error::Config("proton exchange rate must be positive".into()));
            }
        }
        if let Some(r) = &f.reaction {
            if r.d_start <= r.d_form {
                return Err(Error::Config("reaction d_start must exceed d_form".into()));
            }
        }
        if let Some(r) = &f.restraint {
            if !(r.rate > 0.0 && r.rate <= 1.0) || r.target_distance < 0.0 {
                return Err(Error::Config(
                    "restraint rate must be in (0, 1] and target distance >= 0".into(),
                ));
            }
        }
        if let Some(c) = &f.contacts {
            if let Some([high, mid]) = c.thresholds {
                if high < mid {
                    return Err(Error::Config("contact thresholds need t_high >= t_mid".into()));
                }
            }
        }
        if let Some(l) = &f.linker {
            if l.beads == 0 || l.bond_length <= 0.0 || l.persistence_length <= 0.0 {
                return Err(Error::Config(
                    "linker needs >= 1 bead, positive bond and persistence lengths".into(),
                ));
            }
        }
        for grid in [f.pcs.as_ref().map(|p| &p.grid), f.saxs.as_ref().map(|s| &s.q)]
            .into_iter()
            .flatten()
        {
            if grid.points < 2 || grid.max <= grid.min {
                return Err(Error::Config("grids need >= 2 points and max > min".into()));
            }
        }
        Ok(())
    }
}

fn yes() -> bool {
    true
}
fn one() -> f64 {
    1.0
}
fn two() -> f64 {
    2.0
}
fn three() -> f64 {
    3.0
}
fn four() -> f64 {
    4.0
}
fn eight() -> f64 {
    8.0
}
fn forty() -> f64 {
    40.0
}
fn half() -> f64 {
    0.5
}
fn six() -> usize {
    6
}
fn ten() -> usize {
    10
}
fn yellow() -> String {
    "yellow".into()
}
fn default_populations() -> [f64; 2] {
    [0.7, 0.3]
}
fn default_hbond_window() -> [f64; 2] {
    [2.0, 3.0]
}
fn default_d_form() -> f64 {
    2.2
}
fn default_latch() -> f64 {
    0.1
}
fn default_pre_constant() -> f64 {
    1.0e6
}
fn default_baseline_width() -> f64 {
    5.0
}
fn default_field() -> f64 {
    600.0
}
fn default_spectrum_grid() -> GridConfig {
    GridConfig {
        min: -20.0,
        max: 20.0,
        points: 2001,
    }
}
fn default_noise() -> f64 {
    0.002
}
fn default_q_grid() -> GridConfig {
    GridConfig {
        min: 0.0,
        max: 0.5,
        points: 101,
    }
}
fn default_noise_a() -> f64 {
    0.02
}
fn default_noise_b_rel() -> f64 {
    1e-6
}
fn default_w_min() -> f64 {
    0.02
}
fn default_w_max() -> f64 {
    0.3
}
fn default_eta() -> f64 {
    0.05
}
fn default_bond() -> f64 {
    3.8
}
fn default_damping() -> f64 {
    0.98
}
fn default_persistence() -> f64 {
    4.0
}
fn default_kt() -> f64 {
    4.114
}
