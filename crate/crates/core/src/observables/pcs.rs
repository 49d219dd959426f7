use std::f64::consts::PI;

use nalgebra::UnitQuaternion;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scene::Pose;
use crate::Vec3;

/// Converts `Δχ[1e-32 m³] / r[Å]³` to ppm.
///
/// `Δχ/r³ = (x·1e-32 m³)/(R³·1e-30 m³) = 1e-2·x/R³`, and ppm is `1e6` times
/// the dimensionless shift, so the prefactor is `1e4`.
/// Example: Δχ_ax = 2, r = 10, θ = 0 gives `1e4·2·2/(12π·1000) ≈ 1.0610 ppm`.
pub const PCS_PPM_PREFACTOR: f64 = 1e4;

/// Anisotropic susceptibility tensor attached to a body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiTensor {
    /// 1e-32 m³.
    pub delta_chi_ax: f64,
    /// 1e-32 m³.
    pub delta_chi_rh: f64,
    /// Principal axes expressed in the molecule frame: column k of the
    /// rotation matrix is principal axis k.
    pub frame: UnitQuaternion<f64>,
    /// Metal position in the molecule frame, Å.
    pub metal: Vec3,
}

impl ChiTensor {
    pub fn axial(delta_chi_ax: f64, metal: Vec3) -> Self {
        Self {
            delta_chi_ax,
            delta_chi_rh: 0.0,
            frame: UnitQuaternion::identity(),
            metal,
        }
    }

    /// |Δχ_rh| ≤ (2/3)|Δχ_ax|.
    pub fn is_conventional(&self) -> bool {
        self.delta_chi_rh.abs() <= 2.0 / 3.0 * self.delta_chi_ax.abs() + 1e-12
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarCoord {
    /// Å.
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Probe position in the principal-axis frame of a tensor riding on a body
/// posed at `pose` with zoom `zoom`.
pub fn polar_from_frame(probe_world: &Vec3, tensor: &ChiTensor, pose: &Pose, zoom: f64) -> Result<PolarCoord> {
    let frame = pose.frame(zoom);
    let metal_world = frame.apply(&tensor.metal);
    let axes = frame.rotation * tensor.frame;
    let v = axes.inverse() * (probe_world - metal_world);
    let r = v.norm();
    if r == 0.0 {
        return Err(Error::Singularity("probe coincides with the paramagnetic center"));
    }
    let theta = (v.z / r).clamp(-1.0, 1.0).acos();
    let phi = if v.x == 0.0 && v.y == 0.0 { 0.0 } else { v.y.atan2(v.x) };
    Ok(PolarCoord { r, theta, phi })
}

/// Pseudocontact shift in ppm.
pub fn pcs(p: &PolarCoord, t: &ChiTensor) -> f64 {
    let (s, c) = p.theta.sin_cos();
    let angular = t.delta_chi_ax * (3.0 * c * c - 1.0) + 1.5 * t.delta_chi_rh * s * s * (2.0 * p.phi).cos();
    PCS_PPM_PREFACTOR * angular / (12.0 * PI * p.r.powi(3))
}

/// Paramagnetic broadening `C/r⁶` plus the diamagnetic baseline, Hz.
pub fn pre_linewidth(r: f64, constant: f64, baseline: f64) -> f64 {
    constant / r.powi(6) + baseline
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn origin_pose() -> Pose {
        Pose::identity()
    }

    #[test]
    fn polar_on_axes() {
        let t = ChiTensor::axial(1.0, Vec3::zeros());
        let p = polar_from_frame(&Vec3::new(0.0, 0.0, 10.0), &t, &origin_pose(), 1.0).unwrap();
        assert_eq!((p.r, p.theta, p.phi), (10.0, 0.0, 0.0));
        let p = polar_from_frame(&Vec3::new(5.0, 0.0, 0.0), &t, &origin_pose(), 1.0).unwrap();
        assert_relative_eq!(p.r, 5.0);
        assert_relative_eq!(p.theta, FRAC_PI_2);
        assert_eq!(p.phi, 0.0);
        assert!(polar_from_frame(&Vec3::zeros(), &t, &origin_pose(), 1.0).is_err());
    }

    #[test]
    fn tensor_frame_rotates_axes() {
        // principal z along molecule x
        let frame = UnitQuaternion::from_axis_angle(&Vec3::y_axis(), FRAC_PI_2);
        let t = ChiTensor {
            frame,
            ..ChiTensor::axial(1.0, Vec3::zeros())
        };
        let p = polar_from_frame(&Vec3::new(4.0, 0.0, 0.0), &t, &origin_pose(), 1.0).unwrap();
        assert!(p.theta.abs() < 1e-12);
    }

    #[test]
    fn worked_example() {
        let t = ChiTensor::axial(2.0, Vec3::zeros());
        let v = pcs(
            &PolarCoord {
                r: 10.0,
                theta: 0.0,
                phi: 0.0,
            },
            &t,
        );
        // independent bookkeeping in SI
        let chi = 2.0e-32;
        let r = 10.0e-10;
        let si = chi * 2.0 / (12.0 * PI * r * r * r) * 1e6;
        assert_relative_eq!(v, si, max_relative = 1e-12);
        assert_relative_eq!(v, 40.0 / (12.0 * PI), max_relative = 1e-12);
    }

    #[test]
    fn magic_angle_and_sign_change() {
        let t = ChiTensor::axial(3.0, Vec3::zeros());
        let magic = (1.0f64 / 3.0).sqrt().acos();
        assert!(
            pcs(
                &PolarCoord {
                    r: 7.0,
                    theta: magic,
                    phi: 0.3
                },
                &t
            )
            .abs()
                < 1e-12
        );
        let on = pcs(
            &PolarCoord {
                r: 7.0,
                theta: 0.0,
                phi: 0.0,
            },
            &t,
        );
        let eq = pcs(
            &PolarCoord {
                r: 7.0,
                theta: FRAC_PI_2,
                phi: 0.0,
            },
            &t,
        );
        assert!(on > 0.0 && eq < 0.0);
        assert_relative_eq!(on, -2.0 * eq, max_relative = 1e-12);
    }

    #[test]
    fn linewidth() {
        assert_relative_eq!(pre_linewidth(10.0, 1e6, 5.0), 6.0);
        let near = pre_linewidth(3.0, 1e6, 0.0);
        let far = pre_linewidth(6.0, 1e6, 0.0);
        assert_relative_eq!(near / far, 64.0, max_relative = 1e-12);
        assert_relative_eq!(pre_linewidth(1e6, 1e6, 5.0), 5.0, max_relative = 1e-12);
    }

    #[test]
    fn rhombic_convention_check() {
        let mut t = ChiTensor::axial(3.0, Vec3::zeros());
        t.delta_chi_rh = 2.0;
        assert!(t.is_conventional());
        t.delta_chi_rh = 2.5;
        assert!(!t.is_conventional());
    }
}
