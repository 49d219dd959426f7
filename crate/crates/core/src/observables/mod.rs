//! Paramagnetic NMR (pseudocontact shift, relaxation broadening, simulated
//! spectrum) and residue-level SAXS.

mod pcs;
mod saxs;
mod spectrum;

pub use pcs::{pcs, polar_from_frame, pre_linewidth, ChiTensor, PolarCoord, PCS_PPM_PREFACTOR};
pub use saxs::{fit_saxs, parse_profile, saxs_debye, sinc, synth_reference, write_profile, FitResult, SaxsProfile};
pub use spectrum::{simulate_spectrum, Spectrum};

/// `n` evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { max } else { min + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::linspace;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, 0.5, 101);
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 0.5);
        assert!((g[1] - 0.005).abs() < 1e-15);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
        assert!(linspace(1.0, 2.0, 0).is_empty());
    }
}
