use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// ppm.
    pub axis: Vec<f64>,
    pub intensity: Vec<f64>,
    /// ppm.
    pub shift: f64,
    /// Hz.
    pub linewidth: f64,
}

/// Unit-area Lorentzian at `shift` with full width `width_hz / field_mhz`
/// ppm, plus Gaussian noise of standard deviation `noise_sigma`.
pub fn simulate_spectrum<R: Rng + ?Sized>(
    shift: f64,
    width_hz: f64,
    field_mhz: f64,
    axis: &[f64],
    noise_sigma: f64,
    rng: &mut R,
) -> Spectrum {
    let gamma = 0.5 * width_hz / field_mhz;
    let noise = (noise_sigma > 0.0).then(|| Normal::new(0.0, noise_sigma).expect("finite sigma"));
    let intensity = axis
        .iter()
        .map(|&x| {
            let dx = x - shift;
            let line = gamma / (PI * (dx * dx + gamma * gamma));
            match &noise {
                Some(n) => line + n.sample(rng),
                None => line,
            }
        })
        .collect();
    Spectrum {
        axis: axis.to_vec(),
        intensity,
        shift,
        linewidth: width_hz,
    }
}
