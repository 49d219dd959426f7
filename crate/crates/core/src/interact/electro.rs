use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargedPair {
    pub q_i: f64,
    pub q_j: f64,
    /// Å.
    pub distance: f64,
    pub coupling: f64,
}

impl ChargedPair {
    pub fn new(q_i: f64, q_j: f64, distance: f64) -> Self {
        Self {
            q_i,
            q_j,
            distance,
            coupling: 1.0,
        }
    }

    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }
}

/// Σ k·qᵢ·qⱼ / d², a dimensionless demo score.
pub fn electrostatic_term(pairs: &[ChargedPair]) -> Result<f64> {
    let mut total = 0.0;
    for p in pairs {
        if p.q_i == 0.0 || p.q_j == 0.0 || p.coupling == 0.0 {
            continue;
        }
        if p.distance <= 0.0 {
            return Err(Error::Singularity("electrostatic pair at zero distance"));
        }
        total += p.coupling * p.q_i * p.q_j / (p.distance * p.distance);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carboxylate_pair_at_two() {
        // +1 on N, -0.5 on each O, coupling 2 per pair: -1/d1² - 1/d2²
        let pairs = [
            ChargedPair::new(1.0, -0.5, 2.0).with_coupling(2.0),
            ChargedPair::new(1.0, -0.5, 2.0).with_coupling(2.0),
        ];
        assert!((electrostatic_term(&pairs).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn unit_like_charges() {
        assert_eq!(electrostatic_term(&[ChargedPair::new(1.0, 1.0, 1.0)]).unwrap(), 1.0);
        assert_eq!(electrostatic_term(&[ChargedPair::new(0.0, 1.0, 0.5)]).unwrap(), 0.0);
        assert_eq!(electrostatic_term(&[]).unwrap(), 0.0);
    }

    #[test]
    fn zero_distance_is_an_error() {
        assert!(matches!(
            electrostatic_term(&[ChargedPair::new(1.0, -1.0, 0.0)]),
            Err(Error::Singularity(_))
        ));
    }
}
