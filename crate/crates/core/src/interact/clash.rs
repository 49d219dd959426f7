use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClashPair {
    pub a: usize,
    pub b: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClashReport {
    /// Sorted by (a, b).
    pub pairs: Vec<ClashPair>,
    pub flags_a: Vec<bool>,
    pub flags_b: Vec<bool>,
}

impl ClashReport {
    pub fn any(&self) -> bool {
        !self.pairs.is_empty()
    }

    pub fn min_distance(&self) -> Option<f64> {
        self.pairs.iter().map(|p| p.distance).reduce(f64::min)
    }

    fn from_pairs(mut pairs: Vec<ClashPair>, na: usize, nb: usize) -> Self {
        pairs.sort_by_key(|p| (p.a, p.b));
        let mut flags_a = vec![false; na];
        let mut flags_b = vec![false; nb];
        for p in &pairs {
            flags_a[p.a] = true;
            flags_b[p.b] = true;
        }
        Self {
            pairs,
            flags_a,
            flags_b,
        }
    }
}

/// Every cross pair closer than `cutoff` (strict), found with a uniform grid.
pub fn detect_clashes(world_a: &[Vec3], world_b: &[Vec3], cutoff: f64) -> ClashReport {
    if cutoff <= 0.0 || world_a.is_empty() || world_b.is_empty() {
        return ClashReport::from_pairs(Vec::new(), world_a.len(), world_b.len());
    }
    let cell = |p: &Vec3| {
        (
            (p.x / cutoff).floor() as i64,
            (p.y / cutoff).floor() as i64,
            (p.z / cutoff).floor() as i64,
        )
    };
    let mut grid: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    for (j, p) in world_b.iter().enumerate() {
        grid.entry(cell(p)).or_default().push(j);
    }
    let mut pairs = Vec::new();
    for (i, p) in world_a.iter().enumerate() {
        let (cx, cy, cz) = cell(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let Some(bucket) = grid.get(&(cx + dx, cy + dy, cz + dz)) else {
                        continue;
                    };
                    for &j in bucket {
                        let d = (p - world_b[j]).norm();
                        if d < cutoff {
                            pairs.push(ClashPair {
                                a: i,
                                b: j,
                                distance: d,
                            });
                        }
                    }
                }
            }
        }
    }
    ClashReport::from_pairs(pairs, world_a.len(), world_b.len())
}

pub fn detect_clashes_brute_force(world_a: &[Vec3], world_b: &[Vec3], cutoff: f64) -> ClashReport {
    let mut pairs = Vec::new();
    for (i, p) in world_a.iter().enumerate() {
        for (j, q) in world_b.iter().enumerate() {
            let d = (p - q).norm();
            if d < cutoff {
                pairs.push(ClashPair {
                    a: i,
                    b: j,
                    distance: d,
                });
            }
        }
    }
    ClashReport::from_pairs(pairs, world_a.len(), world_b.len())
}

/// Overlay sphere opacity per bead: `halo` when clashing, 0 otherwise.
pub fn halo_opacities(report: &ClashReport, halo: f64) -> (Vec<f64>, Vec<f64>) {
    let map = |flags: &[bool]| flags.iter().map(|&f| if f { halo } else { 0.0 }).collect();
    (map(&report.flags_a), map(&report.flags_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cutoff_rule() {
        let a = [Vec3::zeros()];
        let r = detect_clashes(&a, &[Vec3::new(2.5, 0.0, 0.0)], 3.0);
        assert_eq!(r.pairs.len(), 1);
        assert_eq!(r.pairs[0].distance, 2.5);
        let (ha, hb) = halo_opacities(&r, 0.5);
        assert_eq!((ha[0], hb[0]), (0.5, 0.5));

        let r = detect_clashes(&a, &[Vec3::new(3.5, 0.0, 0.0)], 3.0);
        assert!(!r.any());
        assert_eq!(halo_opacities(&r, 0.5).0[0], 0.0);

        // strict inequality
        assert!(!detect_clashes(&a, &[Vec3::new(3.0, 0.0, 0.0)], 3.0).any());
    }

    #[test]
    fn random_scene_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut cloud = |n: usize| -> Vec<Vec3> {
            (0..n)
                .map(|_| {
                    Vec3::new(
                        rng.random_range(-8.0..8.0),
                        rng.random_range(-8.0..8.0),
                        rng.random_range(-8.0..8.0),
                    )
                })
                .collect()
        };
        let a = cloud(50);
        let b = cloud(50);
        let fast = detect_clashes(&a, &b, 3.0);
        let slow = detect_clashes_brute_force(&a, &b, 3.0);
        assert!(fast.any());
        assert_eq!(fast, slow);
    }

    #[test]
    fn negative_coordinates_bucket_correctly() {
        let a = [Vec3::new(-0.1, -0.1, -0.1)];
        let b = [Vec3::new(0.1, 0.1, 0.1)];
        assert!(detect_clashes(&a, &b, 3.0).any());
    }
}
