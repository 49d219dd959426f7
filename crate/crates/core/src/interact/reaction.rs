use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::Vec3;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceSign {
    #[default]
    Undetermined,
    Plus,
    Minus,
}

impl FaceSign {
    pub fn code(self) -> f64 {
        match self {
            FaceSign::Undetermined => 0.0,
            FaceSign::Plus => 1.0,
            FaceSign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReactionParams {
    pub d_start: f64,
    pub d_form: f64,
    pub latch: f64,
}

impl Default for ReactionParams {
    fn default() -> Self {
        Self {
            d_start: 4.0,
            d_form: 2.2,
            latch: 0.1,
        }
    }
}

/// World positions of the atoms taking part in the cycloaddition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReactionGeometry {
    /// Terminal diene carbons.
    pub diene_ends: [Vec3; 2],
    /// Dienophile carbons paired with `diene_ends` element-wise.
    pub dienophile: [Vec3; 2],
    pub diene_plane: [Vec3; 3],
}

impl ReactionGeometry {
    pub fn pair_distances(&self) -> [f64; 2] {
        [
            (self.diene_ends[0] - self.dienophile[0]).norm(),
            (self.diene_ends[1] - self.dienophile[1]).norm(),
        ]
    }

    fn face(&self) -> FaceSign {
        let [p0, p1, p2] = self.diene_plane;
        let normal = (p1 - p0).cross(&(p2 - p0));
        let centroid = (p0 + p1 + p2) / 3.0;
        let approach = (self.dienophile[0] + self.dienophile[1]) / 2.0 - centroid;
        let s = normal.dot(&approach);
        if s > 0.0 {
            FaceSign::Plus
        } else if s < 0.0 {
            FaceSign::Minus
        } else {
            FaceSign::Undetermined
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ReactionState {
    pub progress: f64,
    pub formed: bool,
    pub face_sign: FaceSign,
    pub distances: [f64; 2],
}

impl ReactionState {
    /// Render opacity of both forming bonds.
    pub fn bond_opacity(&self) -> f64 {
        self.progress
    }
}

pub fn diels_alder_progress(d1: f64, d2: f64, params: &ReactionParams) -> f64 {
    ((params.d_start - d1.max(d2)) / (params.d_start - params.d_form)).clamp(0.0, 1.0)
}

/// Advance the reaction one tick. A formed state is returned unchanged.
pub fn diels_alder_step(state: &ReactionState, geometry: &ReactionGeometry, params: &ReactionParams) -> ReactionState {
    if state.formed {
        return *state;
    }
    let distances = geometry.pair_distances();
    let progress = diels_alder_progress(distances[0], distances[1], params);
    let mut face_sign = state.face_sign;
    if face_sign == FaceSign::Undetermined && progress > params.latch {
        face_sign = geometry.face();
    }
    let formed = distances[0].max(distances[1]) <= params.d_form;
    ReactionState {
        progress: if formed { 1.0 } else { progress },
        formed,
        face_sign,
        distances,
    }
}

/// A bead in a two-body scene: (body index, bead index).
pub type AtomRef = (usize, usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductTopology {
    pub new_bonds: [(AtomRef, AtomRef); 2],
    /// Six-membered rings closed by the new bonds.
    pub rings: Vec<Vec<AtomRef>>,
    pub face_sign: FaceSign,
}

/// Cycloadduct connectivity: the two new σ bonds and every six-membered ring
/// they close through the diene's bond graph. With a cyclic diene such as
/// cyclohexadiene both bridges close a ring, giving fused bicyclic rings.
pub fn product_topology(
    diene_bonds: &[(usize, usize)],
    diene_ends: [usize; 2],
    dienophile: [usize; 2],
    face_sign: FaceSign,
) -> ProductTopology {
    let mut rings = Vec::new();
    for path in paths_with_edges(diene_bonds, diene_ends[0], diene_ends[1], 3) {
        let mut ring: Vec<AtomRef> = path.into_iter().map(|i| (0, i)).collect();
        ring.push((1, dienophile[1]));
        ring.push((1, dienophile[0]));
        rings.push(ring);
    }
    ProductTopology {
        new_bonds: [
            ((0, diene_ends[0]), (1, dienophile[0])),
            ((0, diene_ends[1]), (1, dienophile[1])),
        ],
        rings,
        face_sign,
    }
}

/// Simple paths from `start` to `end` using exactly `edges` bonds.
fn paths_with_edges(bonds: &[(usize, usize)], start: usize, end: usize, edges: usize) -> Vec<Vec<usize>> {
    fn walk(bonds: &[(usize, usize)], path: &mut Vec<usize>, end: usize, left: usize, out: &mut BTreeSet<Vec<usize>>) {
        let here = *path.last().unwrap();
        if left == 0 {
            if here == end {
                out.insert(path.clone());
            }
            return;
        }
        for &(i, j) in bonds {
            let next = if i == here {
                j
            } else if j == here {
                i
            } else {
                continue;
            };
            if path.contains(&next) {
                continue;
            }
            path.push(next);
            walk(bonds, path, end, left - 1, out);
            path.pop();
        }
    }
    let mut out = BTreeSet::new();
    walk(bonds, &mut vec![start], end, edges, &mut out);
    out.into_iter().collect()
}
