use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{dashed_line, DEFAULT_DASHED_POINTS};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    Donor,
    Acceptor,
}

impl Site {
    pub fn other(self) -> Site {
        match self {
            Site::Donor => Site::Acceptor,
            Site::Acceptor => Site::Donor,
        }
    }

    pub fn code(self) -> f64 {
        match self {
            Site::Donor => 0.0,
            Site::Acceptor => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtonParams {
    /// Base exchange rate κ, 1/s.
    pub rate: f64,
    /// Transfer only happens below this proton–receiver distance, Å.
    pub gate: f64,
}

impl Default for ProtonParams {
    fn default() -> Self {
        Self { rate: 2.0, gate: 2.0 }
    }
}

/// Two-site proton bookkeeping with its own random stream.
#[derive(Debug, Clone)]
pub struct ProtonState {
    pub holder: Site,
    pub transfer_enabled: bool,
    /// Stationary fractions (donor, acceptor).
    pub populations: [f64; 2],
    pub hops: u64,
    rng: ChaCha8Rng,
}

impl ProtonState {
    pub fn new(populations: [f64; 2], seed: u64) -> Self {
        Self::with_rng(populations, ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn with_rng(populations: [f64; 2], rng: ChaCha8Rng) -> Self {
        Self {
            holder: Site::Donor,
            transfer_enabled: true,
            populations,
            hops: 0,
            rng,
        }
    }

    /// Where the proton sits this tick: bonded to the donor, or placed on the
    /// acceptor along the acceptor→donor axis at `bond_length`.
    pub fn proton_position(&self, donor: &Vec3, bonded: &Vec3, acceptor: &Vec3, bond_length: f64) -> Vec3 {
        match self.holder {
            Site::Donor => *bonded,
            Site::Acceptor => {
                let axis = donor - acceptor;
                let n = axis.norm();
                if n > 0.0 {
                    acceptor + axis * (bond_length / n)
                } else {
                    *acceptor
                }
            }
        }
    }

    /// Heavy atom that would receive the proton on the next hop.
    pub fn receiver<'a>(&self, donor: &'a Vec3, acceptor: &'a Vec3) -> &'a Vec3 {
        match self.holder {
            Site::Donor => acceptor,
            Site::Acceptor => donor,
        }
    }
}

/// One tick of the gated two-state Markov chain. Returns whether the proton
/// hopped. A uniform is drawn on every call so the stream position does not
/// depend on geometry.
///
/// Hop probabilities come from the exact two-state propagator over `dt`:
/// `P(D→A) = π_A (1 − e^{−κ dt})`, `P(A→D) = π_D (1 − e^{−κ dt})`, whose
/// stationary distribution is exactly `π` for any `dt`.
pub fn proton_transfer_step(state: &mut ProtonState, d_to_receiver: f64, dt: f64, params: &ProtonParams) -> bool {
    let u: f64 = state.rng.random();
    if !state.transfer_enabled || !(d_to_receiver < params.gate) || dt <= 0.0 {
        return false;
    }
    let relax = 1.0 - (-params.rate * dt).exp();
    let target = match state.holder {
        Site::Donor => state.populations[1],
        Site::Acceptor => state.populations[0],
    };
    if u < target * relax {
        state.holder = state.holder.other();
        state.hops += 1;
        true
    } else {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HBond {
    pub from: Vec3,
    pub to: Vec3,
    pub distance: f64,
    pub points: Vec<Vec3>,
}

/// Dotted guide from the proton to the receiving heavy atom when their
/// distance is strictly inside `window`.
pub fn hbond_candidate(proton: &Vec3, receiver: &Vec3, window: [f64; 2]) -> Option<HBond> {
    let d = (proton - receiver).norm();
    (d > window[0] && d < window[1]).then(|| HBond {
        from: *proton,
        to: *receiver,
        distance: d,
        points: dashed_line(proton, receiver, DEFAULT_DASHED_POINTS),
    })
}
