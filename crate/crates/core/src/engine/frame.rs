use serde::{Deserialize, Serialize};

use super::readouts::{Feature, Readouts};
use crate::interact::ProductTopology;
use crate::observables::{SaxsProfile, Spectrum};
use crate::Vec3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyFrame {
    pub marker: String,
    /// False when the marker was lost and the last pose is being reused.
    pub visible: bool,
    /// Å, world frame.
    pub positions: Vec<Vec3>,
    pub opacities: Vec<f64>,
    /// Clash overlay sphere opacity per bead.
    pub halos: Vec<f64>,
}

/// A dotted guide: `points` spheres strictly between the endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DashedLine {
    pub label: String,
    pub from: Vec3,
    pub to: Vec3,
    /// Å.
    pub distance: f64,
    pub color: String,
    pub points: Vec<Vec3>,
}

/// A solid line or tube overlay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub label: String,
    pub from: Vec3,
    pub to: Vec3,
    pub color: String,
    pub width: f64,
    pub opacity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaxsSeries {
    pub calculated: SaxsProfile,
    pub reference: SaxsProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureError {
    pub feature: Feature,
    pub message: String,
}

/// Everything one tick produces. The default is the empty frame hosts see
/// before the first tick.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FrameState {
    pub tick: u64,
    /// Seconds since the engine started.
    pub time: f64,
    pub bodies: Vec<BodyFrame>,
    pub dashed: Vec<DashedLine>,
    pub lines: Vec<Line>,
    pub readouts: Readouts,
    /// Labeled key distances, Å, in scene order.
    pub key_distances: Vec<(String, f64)>,
    pub haptic_pulse: bool,
    pub proton_position: Option<Vec3>,
    pub linker: Option<Vec<Vec3>>,
    pub product: Option<ProductTopology>,
    pub spectrum: Option<Spectrum>,
    pub saxs: Option<SaxsSeries>,
    pub errors: Vec<FeatureError>,
}

impl FrameState {
    pub fn stale_markers(&self) -> impl Iterator<Item = &str> {
        self.bodies.iter().filter(|b| !b.visible).map(|b| b.marker.as_str())
    }

    pub fn key_distance(&self, label: &str) -> Option<f64> {
        self.key_distances.iter().find(|(l, _)| l == label).map(|(_, d)| *d)
    }
}
