//! Per-marker rigid poses and world-frame coordinates.
//!
//! Poses are in display units (what the tracker reports). World coordinates
//! are always Å: `world = (R · c_display + t) · zoom`.

use nalgebra::{Quaternion, UnitQuaternion};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::BeadModel;
use crate::molio::scene_config::PoseConfig;
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub rotation: UnitQuaternion<f64>,
    /// Display units.
    pub translation: Vec3,
    /// Seconds.
    pub timestamp: f64,
}

impl Default for Pose {
    fn default() -> Self {
        Self::identity()
    }
}

impl Pose {
    pub fn identity() -> Self {
        Self {
            rotation: UnitQuaternion::identity(),
            translation: Vec3::zeros(),
            timestamp: 0.0,
        }
    }

    pub fn new(rotation: UnitQuaternion<f64>, translation: Vec3) -> Self {
        Self {
            rotation,
            translation,
            timestamp: 0.0,
        }
    }

    pub fn from_translation(translation: Vec3) -> Self {
        Self::new(UnitQuaternion::identity(), translation)
    }

    /// Build from raw (w, x, y, z) components, renormalizing if the norm is
    /// within `tolerance` of 1.
    pub fn from_components(quat: [f64; 4], translation: [f64; 3], tolerance: f64) -> Result<Self> {
        let q = Quaternion::new(quat[0], quat[1], quat[2], quat[3]);
        let norm = q.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tolerance {
            return Err(Error::Config(format!(
                "quaternion norm {norm} is not within {tolerance} of 1"
            )));
        }
        if translation.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("non-finite translation".into()));
        }
        Ok(Self::new(UnitQuaternion::from_quaternion(q), Vec3::from(translation)))
    }

    pub fn from_config(config: &PoseConfig) -> Result<Self> {
        Self::from_components(config.rotation, config.translation, 1e-3)
    }

    pub fn at(mut self, timestamp: f64) -> Self {
        self.timestamp = timestamp;
        self
    }

    /// Å-frame rigid transform for a model drawn at `zoom`.
    pub fn frame(&self, zoom: f64) -> RigidFrame {
        RigidFrame {
            rotation: self.rotation,
            translation: self.translation * zoom,
        }
    }

    /// Quaternion as (w, x, y, z).
    pub fn quat_components(&self) -> [f64; 4] {
        let q = self.rotation.quaternion();
        [q.w, q.i, q.j, q.k]
    }
}

/// Rigid transform acting on Å coordinates: `x ↦ R x + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidFrame {
    pub rotation: UnitQuaternion<f64>,
    pub translation: Vec3,
}

impl RigidFrame {
    pub fn identity() -> Self {
        Self {
            rotation: UnitQuaternion::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn apply(&self, point: &Vec3) -> Vec3 {
        self.rotation * point + self.translation
    }

    pub fn inverse_apply(&self, point: &Vec3) -> Vec3 {
        self.rotation.inverse() * (point - self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RigidFrame) -> RigidFrame {
        RigidFrame {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidFrame {
        let inv = self.rotation.inverse();
        RigidFrame {
            rotation: inv,
            translation: -(inv * self.translation),
        }
    }
}

/// Å world coordinates of every bead under `pose`.
pub fn world_positions(model: &BeadModel, pose: &Pose) -> Vec<Vec3> {
    let frame = pose.frame(model.zoom);
    model.beads.iter().map(|bead| frame.apply(&bead.center)).collect()
}

#[derive(Debug, Clone)]
pub struct Body {
    pub marker: String,
    pub model: BeadModel,
    pub pose: Pose,
    pub visible: bool,
}

/// Registered bodies with their latest pose and tracking state.
#[derive(Debug, Clone, Default)]
pub struct SceneState {
    bodies: Vec<Body>,
}

impl SceneState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_body(&mut self, marker: impl Into<String>, model: BeadModel, pose: Pose) -> Result<()> {
        let marker = marker.into();
        if self.index(&marker).is_some() {
            return Err(Error::Config(format!("marker `{marker}` registered twice")));
        }
        self.bodies.push(Body {
            marker,
            model,
            pose,
            visible: true,
        });
        Ok(())
    }

    pub fn bodies(&self) -> &[Body] {
        &self.bodies
    }

    pub fn index(&self, marker: &str) -> Option<usize> {
        self.bodies.iter().position(|b| b.marker == marker)
    }

    pub fn body(&self, marker: &str) -> Result<&Body> {
        self.index(marker)
            .map(|i| &self.bodies[i])
            .ok_or_else(|| Error::UnknownMarker(marker.to_string()))
    }

    fn body_mut(&mut self, marker: &str) -> Result<&mut Body> {
        match self.index(marker) {
            Some(i) => Ok(&mut self.bodies[i]),
            None => Err(Error::UnknownMarker(marker.to_string())),
        }
    }

    pub fn set_pose(&mut self, marker: &str, pose: Pose) -> Result<()> {
        let body = self.body_mut(marker)?;
        body.pose = pose;
        body.visible = true;
        Ok(())
    }

    /// Keep the last pose, flag the marker as not tracked.
    pub fn mark_lost(&mut self, marker: &str) -> Result<()> {
        self.body_mut(marker)?.visible = false;
        Ok(())
    }

    pub fn pose(&self, marker: &str) -> Result<Pose> {
        Ok(self.body(marker)?.pose)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Bead, ColorClass, Scheme};
    use std::f64::consts::FRAC_PI_2;

    fn model_with(centers: &[Vec3], zoom: f64) -> BeadModel {
        let beads = centers
            .iter()
            .enumerate()
            .map(|(i, c)| Bead {
                id: format!("A:1:X{i}"),
                label: format!("X{i}"),
                center: *c,
                radius: 1.0,
                color_class: ColorClass::Polar,
                opacity: 1.0,
                residue: None,
                residue_name: "UNK".into(),
                electrons: 1.0,
                charge: 0.0,
                element: None,
            })
            .collect();
        BeadModel::new(beads, vec![], Scheme::Atomistic, zoom)
    }

    #[test]
    fn identity_pose_scales_display_by_zoom() {
        // display center (1,0,0) at zoom 2 is the Å center (2,0,0)
        let m = model_with(&[Vec3::new(2.0, 0.0, 0.0)], 2.0);
        assert_eq!(m.display_center(0), Vec3::new(1.0, 0.0, 0.0));
        let w = world_positions(&m, &Pose::identity());
        assert_eq!(w[0], Vec3::new(2.0, 0.0, 0.0));
    }

    #[test]
    fn pure_translation() {
        let m = model_with(&[Vec3::zeros()], 1.0);
        let w = world_positions(&m, &Pose::from_translation(Vec3::new(1.0, 1.0, 1.0)));
        assert_eq!(w[0], Vec3::new(1.0, 1.0, 1.0));
    }

    #[test]
    fn quarter_turn_about_z() {
        let m = model_with(&[Vec3::new(2.0, 0.0, 0.0)], 2.0);
        let pose = Pose::new(
            UnitQuaternion::from_axis_angle(&Vec3::z_axis(), FRAC_PI_2),
            Vec3::zeros(),
        );
        let w = world_positions(&m, &pose);
        assert!((w[0] - Vec3::new(0.0, 2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn set_and_lost() {
        let mut s = SceneState::new();
        s.add_body("hiro", model_with(&[Vec3::zeros()], 1.0), Pose::identity())
            .unwrap();
        let p = Pose::from_translation(Vec3::new(3.0, 0.0, 0.0));
        s.set_pose("hiro", p).unwrap();
        assert_eq!(s.pose("hiro").unwrap(), p);
        s.mark_lost("hiro").unwrap();
        assert!(!s.body("hiro").unwrap().visible);
        assert_eq!(s.pose("hiro").unwrap(), p);
        assert!(matches!(s.set_pose("nope", p), Err(Error::UnknownMarker(_))));
        assert!(s.mark_lost("nope").is_err());
    }

    #[test]
    fn quaternion_normalization_tolerance() {
        assert!(Pose::from_components([1.0005, 0.0, 0.0, 0.0], [0.0; 3], 1e-3).is_ok());
        assert!(Pose::from_components([1.1, 0.0, 0.0, 0.0], [0.0; 3], 1e-3).is_err());
        let p = Pose::from_components([1.0005, 0.0, 0.0, 0.0], [0.0; 3], 1e-3).unwrap();
        assert!((p.rotation.quaternion().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frame_compose_and_inverse() {
        let a = RigidFrame {
            rotation: UnitQuaternion::from_euler_angles(0.3, -0.2, 1.1),
            translation: Vec3::new(1.0, 2.0, 3.0),
        };
        let p = Vec3::new(-0.5, 4.0, 2.0);
        let back = a.inverse().apply(&a.apply(&p));
        assert!((back - p).norm() < 1e-12);
        assert!((a.inverse_apply(&a.apply(&p)) - p).norm() < 1e-12);
        let ab = a.compose(&a.inverse());
        assert!((ab.apply(&p) - p).norm() < 1e-12);
    }
}
