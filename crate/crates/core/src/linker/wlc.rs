use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative band around the maximal reach that counts as taut.
pub const EXTENSION_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WlcParams {
    /// Contour length L, Å.
    pub contour: f64,
    /// Persistence length P, Å.
    pub persistence: f64,
    /// Thermal energy, pN·nm.
    pub kt: f64,
}

impl WlcParams {
    /// kT in pN·Å.
    fn kt_pn_a(&self) -> f64 {
        self.kt * 10.0
    }

    fn check(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Config(format!("negative extension {x}")));
        }
        if x >= self.contour {
            return Err(Error::Overstretched {
                x,
                contour: self.contour,
            });
        }
        Ok(x / self.contour)
    }
}

/// Marko–Siggia force at extension `x` (Å), pN.
pub fn wlc_force(x: f64, p: &WlcParams) -> Result<f64> {
    let r = p.check(x)?;
    Ok(p.kt_pn_a() / p.persistence * (0.25 / (1.0 - r).powi(2) - 0.25 + r))
}

/// Work to extend from 0 to `x`, pN·Å (the antiderivative of [`wlc_force`]).
pub fn wlc_free_energy(x: f64, p: &WlcParams) -> Result<f64> {
    let r = p.check(x)?;
    let l = p.contour;
    Ok(p.kt_pn_a() / p.persistence * (l / 4.0 * (1.0 / (1.0 - r) - 1.0) - x / 4.0 + x * x / (2.0 * l)))
}

/// `−F/kT`, the entropy change of a purely entropic chain in units of k.
pub fn entropic_cost(x: f64, p: &WlcParams) -> Result<f64> {
    Ok(-wlc_free_energy(x, p)? / p.kt_pn_a())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    Slack,
    Taut,
    Overstretched,
}

impl Extension {
    pub fn code(self) -> f64 {
        match self {
            Extension::Slack => 0.0,
            Extension::Taut => 1.0,
            Extension::Overstretched => 2.0,
        }
    }
}

/// Compare the anchor separation with the straight-chain reach `(n + 1)·b`.
pub fn extension_check(separation: f64, beads: usize, bond_length: f64) -> (Extension, f64) {
    let max = (beads + 1) as f64 * bond_length;
    let state = if separation > max * (1.0 + EXTENSION_TOLERANCE) {
        Extension::Overstretched
    } else if separation >= max * (1.0 - EXTENSION_TOLERANCE) {
        Extension::Taut
    } else {
        Extension::Slack
    };
    (state, max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params() -> WlcParams {
        WlcParams {
            contour: 26.6,
            persistence: 4.0,
            kt: 4.114,
        }
    }

    #[test]
    fn zero_extension() {
        assert_eq!(wlc_force(0.0, &params()).unwrap(), 0.0);
        assert_eq!(wlc_free_energy(0.0, &params()).unwrap(), 0.0);
    }

    #[test]
    fn half_extension() {
        // 1/(4·(1/2)²) − 1/4 + 1/2
        let p = params();
        let f = wlc_force(p.contour / 2.0, &p).unwrap();
        assert_relative_eq!(f, 1.25 * 41.14 / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn overstretched() {
        let p = params();
        assert!(matches!(wlc_force(p.contour, &p), Err(Error::Overstretched { .. })));
        assert!(wlc_free_energy(30.0, &p).is_err());
        assert!(wlc_force(-1.0, &p).is_err());
    }

    #[test]
    fn derivative_matches_force() {
        let p = params();
        for k in 1..=18 {
            let x = p.contour * 0.05 * k as f64;
            let h = 1e-5 * p.contour;
            let fd = (wlc_free_energy(x + h, &p).unwrap() - wlc_free_energy(x - h, &p).unwrap()) / (2.0 * h);
            assert_relative_eq!(fd, wlc_force(x, &p).unwrap(), max_relative = 1e-6);
        }
    }

    #[test]
    fn increasing_and_convex() {
        let p = params();
        let f: Vec<f64> = (1..=9)
            .map(|k| wlc_force(p.contour * k as f64 / 10.0, &p).unwrap())
            .collect();
        assert!(f.windows(2).all(|w| w[1] > w[0]));
        let e: Vec<f64> = (0..90)
            .map(|k| wlc_free_energy(p.contour * k as f64 / 100.0, &p).unwrap())
            .collect();
        assert!(e.windows(2).all(|w| w[1] > w[0]));
        assert!(e.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] > 0.0));
        assert!(entropic_cost(10.0, &p).unwrap() < 0.0);
    }

    #[test]
    fn extension_states() {
        assert_eq!(extension_check(13.3, 6, 3.8).0, Extension::Slack);
        assert_eq!(extension_check(26.6, 6, 3.8).0, Extension::Taut);
        assert_eq!(extension_check(26.6 * 1.1, 6, 3.8).0, Extension::Overstretched);
        assert_relative_eq!(extension_check(0.0, 6, 3.8).1, 26.6, max_relative = 1e-14);
    }
}
