use nalgebra::UnitQuaternion;
use serde::{Deserialize, Serialize};

use crate::Vec3;

pub const ANCHOR_OPACITY: f64 = 1.0;
pub const BASE_OPACITY: f64 = 0.35;
pub const CLASH_OPACITY: f64 = 0.8;

/// Pulls the second body's anchor bead toward the first body's anchor by
/// nudging an offset layered on top of the user's pose.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BindingRestraint {
    /// Bead index in body A.
    pub anchor_a: usize,
    /// Bead index in body B.
    pub anchor_b: usize,
    /// Å.
    pub target_distance: f64,
    /// Fraction of the distance error corrected per tick.
    pub rate: f64,
    /// Display units per tick.
    pub max_step: f64,
    pub active: bool,
    /// Accumulated translation in body B's marker frame, display units.
    pub offset: Vec3,
}

impl BindingRestraint {
    pub fn new(anchor_a: usize, anchor_b: usize, target_distance: f64, rate: f64, max_step: f64) -> Self {
        Self {
            anchor_a,
            anchor_b,
            target_distance,
            rate,
            max_step,
            active: true,
            offset: Vec3::zeros(),
        }
    }

    /// World-frame (Å) move of body B for this tick, before clamping to the
    /// display step limit.
    pub fn world_step(&self, world_anchor_a: &Vec3, world_anchor_b: &Vec3, zoom_b: f64) -> Vec3 {
        let axis = world_anchor_a - world_anchor_b;
        let d = axis.norm();
        if d == 0.0 {
            return Vec3::zeros();
        }
        let step = axis * (self.rate * (d - self.target_distance) / d);
        let limit = self.max_step * zoom_b;
        let n = step.norm();
        if n > limit {
            step * (limit / n)
        } else {
            step
        }
    }

    /// One tick: move the offset when active, decay it otherwise. Returns the
    /// applied change of the offset in B's marker frame (display units).
    pub fn apply(
        &mut self,
        world_anchor_a: &Vec3,
        world_anchor_b: &Vec3,
        rotation_b: &UnitQuaternion<f64>,
        zoom_b: f64,
    ) -> Vec3 {
        let delta = if self.active {
            let world = self.world_step(world_anchor_a, world_anchor_b, zoom_b);
            rotation_b.inverse() * (world / zoom_b)
        } else {
            -self.offset * self.rate
        };
        self.offset += delta;
        delta
    }

    pub fn reset(&mut self) {
        self.offset = Vec3::zeros();
    }

    /// Pose translation with the offset applied, display units.
    pub fn effective_translation(&self, translation: &Vec3, rotation_b: &UnitQuaternion<f64>) -> Vec3 {
        translation + rotation_b * self.offset
    }
}

/// Per-bead opacity for a body: its anchor opaque, the rest translucent,
/// clashing beads raised.
pub fn anchor_opacity(n_beads: usize, anchor: Option<usize>, clash_flags: &[bool]) -> Vec<f64> {
    (0..n_beads)
        .map(|i| {
            if Some(i) == anchor {
                ANCHOR_OPACITY
            } else if clash_flags.get(i).copied().unwrap_or(false) {
                CLASH_OPACITY
            } else {
                BASE_OPACITY
            }
        })
        .collect()
}
