use serde::{Deserialize, Serialize};

use nalgebra::UnitQuaternion;

use crate::error::{Error, Result};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    pub center: Vec3,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    pub iterations: usize,
    /// Fraction of the previous displacement carried into the free step.
    pub damping: f64,
    pub self_collision: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            iterations: 10,
            damping: 0.98,
            self_collision: false,
        }
    }
}

/// Linker beads between two anchors. Link k joins node k−1 and node k, where
/// node 0 is anchor A and node n+1 is anchor B.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkerChain {
    pub positions: Vec<Vec3>,
    previous: Vec<Vec3>,
    /// Anchors seen by the last solve.
    anchors: Option<(Vec3, Vec3)>,
    pub bead_radius: f64,
    pub bond_length: f64,
}

impl LinkerChain {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn max_reach(&self) -> f64 {
        (self.len() + 1) as f64 * self.bond_length
    }

    /// `| |link| − b |` for all n+1 links.
    pub fn bond_residuals(&self, anchor_a: &Vec3, anchor_b: &Vec3) -> Vec<f64> {
        let nodes = self.nodes(anchor_a, anchor_b);
        nodes
            .windows(2)
            .map(|w| ((w[1] - w[0]).norm() - self.bond_length).abs())
            .collect()
    }

    pub fn max_bond_residual(&self, anchor_a: &Vec3, anchor_b: &Vec3) -> f64 {
        self.bond_residuals(anchor_a, anchor_b).into_iter().fold(0.0, f64::max)
    }

    fn nodes(&self, anchor_a: &Vec3, anchor_b: &Vec3) -> Vec<Vec3> {
        let mut nodes = Vec::with_capacity(self.len() + 2);
        nodes.push(*anchor_a);
        nodes.extend_from_slice(&self.positions);
        nodes.push(*anchor_b);
        nodes
    }

    /// Apply a rigid motion to the chain state (positions and history).
    pub fn transform(&mut self, f: impl Fn(&Vec3) -> Vec3) {
        for p in self.positions.iter_mut().chain(self.previous.iter_mut()) {
            *p = f(p);
        }
        if let Some((a, b)) = &mut self.anchors {
            *a = f(a);
            *b = f(b);
        }
    }
}

/// `n` beads evenly spaced on the anchor segment. Coincident anchors get a
/// closed regular polygon through the anchor with side `b`.
pub fn build_linker(n: usize, b: f64, anchor_a: &Vec3, anchor_b: &Vec3, bead_radius: f64) -> Result<LinkerChain> {
    if n == 0 {
        return Err(Error::Config("linker needs at least one bead".into()));
    }
    if !(b > 0.0) {
        return Err(Error::Config(format!("linker bond length {b} must be positive")));
    }
    let positions = if (anchor_b - anchor_a).norm() < 1e-12 {
        arc_layout(n, b, anchor_a, anchor_b, &fallback_perpendicular(&Vec3::x()))
    } else {
        (1..=n)
            .map(|k| anchor_a + (anchor_b - anchor_a) * (k as f64 / (n + 1) as f64))
            .collect()
    };
    Ok(LinkerChain {
        previous: positions.clone(),
        positions,
        anchors: None,
        bead_radius,
        bond_length: b,
    })
}

/// One solver tick: the chain first follows the anchors (see [`carry`]), then
/// takes a damped free step and `iterations` rounds of symmetric link
/// projection (anchors immovable), each followed by obstacle projection.
pub fn step_linker(
    chain: &mut LinkerChain,
    anchor_a: &Vec3,
    anchor_b: &Vec3,
    obstacles: &[Obstacle],
    params: &SolverParams,
) {
    let n = chain.len();
    if n == 0 {
        return;
    }
    let b = chain.bond_length;
    if let Some((old_a, old_b)) = chain.anchors {
        carry(chain, &old_a, &old_b, anchor_a, anchor_b);
    }
    chain.anchors = Some((*anchor_a, *anchor_b));
    if needs_unfolding(chain, anchor_a, anchor_b) {
        let perp = bow_direction(anchor_a, anchor_b, obstacles);
        chain.positions = arc_layout(n, b, anchor_a, anchor_b, &perp);
        chain.previous = chain.positions.clone();
    }

    for i in 0..n {
        let velocity = (chain.positions[i] - chain.previous[i]) * params.damping;
        chain.previous[i] = chain.positions[i];
        chain.positions[i] += velocity;
    }

    for _ in 0..params.iterations {
        for link in 0..=n {
            project_link(chain, anchor_a, anchor_b, link);
        }
        for link in (0..=n).rev() {
            project_link(chain, anchor_a, anchor_b, link);
        }
        if params.self_collision {
            project_self(chain);
        }
        project_obstacles(chain, obstacles);
    }
}

/// Move the chain state (positions and history) with the anchors: translate
/// with A and turn by the smallest rotation taking the old A→B axis to the
/// new one. A change in separation is then taken up by scaling every link's
/// angle to the axis by one common factor, which keeps link lengths; the
/// small sideways closure error left at B is spread along the chain.
fn carry(chain: &mut LinkerChain, old_a: &Vec3, old_b: &Vec3, anchor_a: &Vec3, anchor_b: &Vec3) {
    let (old_axis, new_axis) = (old_b - old_a, anchor_b - anchor_a);
    let rotation = UnitQuaternion::rotation_between(&old_axis, &new_axis).unwrap_or_else(UnitQuaternion::identity);
    let new_a = *anchor_a;
    chain.transform(|p| new_a + rotation * (p - old_a));

    let (old_d, new_d) = (old_axis.norm(), new_axis.norm());
    if old_d < 1e-12 || new_d < 1e-12 || (new_d - old_d).abs() < 1e-15 {
        return;
    }
    let u = new_axis / new_d;
    let n = chain.len();
    let mut nodes = Vec::with_capacity(n + 2);
    nodes.push(new_a);
    nodes.extend(chain.positions.iter().copied());
    nodes.push(new_a + u * old_d);
    let links: Vec<(f64, f64, Vec3)> = nodes
        .windows(2)
        .map(|w| {
            let l = w[1] - w[0];
            let len = l.norm();
            let x = l.dot(&u);
            let side = (l - u * x).try_normalize(1e-12).unwrap_or_else(Vec3::zeros);
            (len, (x / len.max(1e-300)).clamp(-1.0, 1.0).acos(), side)
        })
        .collect();
    let reach_at = |lambda: f64| {
        links
            .iter()
            .map(|(len, theta, _)| len * (lambda * theta).cos())
            .sum::<f64>()
    };
    let theta_max = links.iter().map(|l| l.1).fold(0.0, f64::max);
    if theta_max < 1e-12 {
        return;
    }
    let (mut lo, mut hi) = (0.0, std::f64::consts::PI / theta_max);
    if new_d >= reach_at(lo) || new_d <= reach_at(hi) {
        return;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if reach_at(mid) > new_d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    let mut placed = Vec::with_capacity(n + 2);
    let mut p = new_a;
    placed.push(p);
    for (len, theta, side) in &links {
        let t = lambda * theta;
        p += (u * t.cos() + side * t.sin()) * *len;
        placed.push(p);
    }
    let closure = anchor_b - placed[n + 1];
    let beads = chain.positions.iter_mut().zip(chain.previous.iter_mut());
    for (k, ((p, prev), node)) in beads.zip(&placed[1..=n]).enumerate() {
        let target = node + closure * ((k + 1) as f64 / (n + 1) as f64);
        *prev += target - *p;
        *p = target;
    }
}

fn project_link(chain: &mut LinkerChain, anchor_a: &Vec3, anchor_b: &Vec3, link: usize) {
    let n = chain.len();
    let b = chain.bond_length;
    let node = |chain: &LinkerChain, k: usize| match k {
        0 => *anchor_a,
        k if k == n + 1 => *anchor_b,
        k => chain.positions[k - 1],
    };
    let p = node(chain, link);
    let q = node(chain, link + 1);
    let d = (q - p).norm();
    if d == 0.0 {
        return;
    }
    let correction = (q - p) * ((d - b) / d);
    let p_free = link != 0;
    let q_free = link != n;
    match (p_free, q_free) {
        (true, true) => {
            chain.positions[link - 1] += correction * 0.5;
            chain.positions[link] -= correction * 0.5;
        }
        (true, false) => chain.positions[link - 1] += correction,
        (false, true) => chain.positions[link] -= correction,
        (false, false) => {}
    }
}

fn project_obstacles(chain: &mut LinkerChain, obstacles: &[Obstacle]) {
    for p in chain.positions.iter_mut() {
        for o in obstacles {
            let min = chain.bead_radius + o.radius;
            let v = *p - o.center;
            let d = v.norm();
            if d < min && d > 0.0 {
                *p = o.center + v * (min / d);
            }
        }
    }
}

fn project_self(chain: &mut LinkerChain) {
    let min = 2.0 * chain.bead_radius;
    let n = chain.len();
    for i in 0..n {
        for j in i + 2..n {
            let v = chain.positions[j] - chain.positions[i];
            let d = v.norm();
            if d < min && d > 0.0 {
                let push = v * (0.5 * (min - d) / d);
                chain.positions[i] -= push;
                chain.positions[j] += push;
            }
        }
    }
}

/// A straight chain between anchors closer than its reach has no component
/// off the axis that projection could grow, so it is re-laid on an arc.
fn needs_unfolding(chain: &LinkerChain, anchor_a: &Vec3, anchor_b: &Vec3) -> bool {
    let axis = anchor_b - anchor_a;
    let d = axis.norm();
    if d >= chain.max_reach() * (1.0 - 1e-9) {
        return false;
    }
    if d < 1e-12 {
        return chain
            .positions
            .iter()
            .all(|p| (p - anchor_a).norm() < 1e-9 * chain.bond_length);
    }
    let u = axis / d;
    chain.positions.iter().all(|p| {
        let r = p - anchor_a;
        (r - u * r.dot(&u)).norm() < 1e-9 * chain.bond_length
    })
}

/// Unit vector perpendicular to the anchor axis pointing away from the
/// obstacles' centroid.
fn bow_direction(anchor_a: &Vec3, anchor_b: &Vec3, obstacles: &[Obstacle]) -> Vec3 {
    let axis = anchor_b - anchor_a;
    let u = axis.try_normalize(1e-12).unwrap_or_else(Vec3::x);
    if !obstacles.is_empty() {
        let centroid = obstacles.iter().map(|o| o.center).sum::<Vec3>() / obstacles.len() as f64;
        let mid = (anchor_a + anchor_b) / 2.0;
        let r = mid - centroid;
        if let Some(w) = (r - u * r.dot(&u)).try_normalize(1e-9) {
            return w;
        }
    }
    fallback_perpendicular(&u)
}

fn fallback_perpendicular(u: &Vec3) -> Vec3 {
    let helper = if u.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    u.cross(&helper).normalize()
}

/// Beads on a circular arc from A to B with all n+1 chords equal to `b`,
/// bulging toward `perp`.
fn arc_layout(n: usize, b: f64, anchor_a: &Vec3, anchor_b: &Vec3, perp: &Vec3) -> Vec<Vec3> {
    let m = (n + 1) as f64;
    let axis = anchor_b - anchor_a;
    let d = axis.norm();
    let u = axis
        .try_normalize(1e-12)
        .unwrap_or_else(|| fallback_perpendicular(perp));
    let w = (perp - u * perp.dot(&u)).normalize();
    let target = (d / b).min(m);
    // sin(mα/2)/sin(α/2) falls from m to 0 on (0, 2π/m)
    let (mut lo, mut hi) = (0.0_f64, 2.0 * std::f64::consts::PI / m);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let ratio = (m * mid / 2.0).sin() / (mid / 2.0).sin();
        if ratio > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = 0.5 * (lo + hi);
    let radius = b / (2.0 * (alpha / 2.0).sin());
    let midpoint = (anchor_a + anchor_b) / 2.0;
    let center = midpoint - w * (radius * (m * alpha / 2.0).cos());
    (1..=n)
        .map(|k| {
            let theta = -m * alpha / 2.0 + k as f64 * alpha;
            center + (u * theta.sin() + w * theta.cos()) * radius
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: f64 = 3.8;

    #[test]
    fn six_beads_taut_initialization() {
        let a = Vec3::zeros();
        let z = Vec3::new(26.6, 0.0, 0.0);
        let chain = build_linker(6, B, &a, &z, 2.0).unwrap();
        assert_eq!(chain.len(), 6);
        assert_eq!(chain.bond_residuals(&a, &z).len(), 7);
        assert!(chain.max_bond_residual(&a, &z) < 1e-12);
    }

    #[test]
    fn single_bead_at_midpoint() {
        let chain = build_linker(1, B, &Vec3::zeros(), &Vec3::new(4.0, 2.0, 0.0), 2.0).unwrap();
        assert_eq!(chain.positions, vec![Vec3::new(2.0, 1.0, 0.0)]);
        assert!(build_linker(0, B, &Vec3::zeros(), &Vec3::x(), 2.0).is_err());
    }

    #[test]
    fn coincident_anchors_polygon() {
        let a = Vec3::new(1.0, 1.0, 1.0);
        for n in 1..8 {
            let chain = build_linker(n, B, &a, &a, 2.0).unwrap();
            assert!(chain.max_bond_residual(&a, &a) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn taut_stays_collinear() {
        let a = Vec3::zeros();
        let z = Vec3::new(26.6, 0.0, 0.0);
        let mut chain = build_linker(6, B, &a, &z, 2.0).unwrap();
        for _ in 0..20 {
            step_linker(&mut chain, &a, &z, &[], &SolverParams::default());
        }
        assert!(chain.max_bond_residual(&a, &z) < 1e-6 * B);
        assert!(chain.positions.iter().all(|p| p.y.abs() < 1e-9 && p.z.abs() < 1e-9));
    }

    #[test]
    fn anchors_moved_closer() {
        let a = Vec3::zeros();
        let z = Vec3::new(26.6, 0.0, 0.0);
        let mut chain = build_linker(6, B, &a, &z, 2.0).unwrap();
        let closer = Vec3::new(25.6, 0.0, 0.0);
        step_linker(&mut chain, &a, &closer, &[], &SolverParams::default());
        assert!(chain.max_bond_residual(&a, &closer) < 1e-3 * B);
    }

    #[test]
    fn arc_is_exact() {
        let a = Vec3::zeros();
        for d in [0.0, 1.0, 5.0, 13.3, 20.0, 26.0] {
            let z = Vec3::new(0.0, d, 0.0);
            let pts = arc_layout(6, B, &a, &z, &Vec3::x());
            let chain = LinkerChain {
                previous: pts.clone(),
                positions: pts,
                anchors: None,
                bead_radius: 1.0,
                bond_length: B,
            };
            assert!(chain.max_bond_residual(&a, &z) < 1e-9, "d = {d}");
        }
    }

    #[test]
    fn obstacle_pushes_beads_out() {
        let a = Vec3::zeros();
        let z = Vec3::new(20.0, 0.0, 0.0);
        let mut chain = build_linker(6, B, &a, &z, 1.9).unwrap();
        let obstacle = Obstacle {
            center: Vec3::new(10.0, 0.0, 0.0),
            radius: 2.0,
        };
        for _ in 0..5 {
            step_linker(&mut chain, &a, &z, &[obstacle], &SolverParams::default());
        }
        let r_sum = 1.9 + 2.0;
        for p in &chain.positions {
            assert!((p - obstacle.center).norm() > r_sum * (1.0 - 1e-3));
        }
    }

    #[test]
    fn deterministic() {
        let a = Vec3::zeros();
        let z = Vec3::new(12.0, 3.0, 0.0);
        let run = || {
            let mut chain = build_linker(6, B, &a, &z, 2.0).unwrap();
            for _ in 0..10 {
                step_linker(&mut chain, &a, &z, &[], &SolverParams::default());
            }
            chain
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn carry_keeps_links_when_separation_changes() {
        let a = Vec3::zeros();
        let mut chain = build_linker(6, B, &a, &Vec3::new(12.0, 0.0, 0.0), 1.0).unwrap();
        let frozen = SolverParams {
            iterations: 0,
            damping: 0.0,
            self_collision: false,
        };
        step_linker(&mut chain, &a, &Vec3::new(12.0, 0.0, 0.0), &[], &frozen);
        for d in [12.5, 14.0, 20.0, 25.0, 9.0, 4.0] {
            let z = Vec3::new(d, 0.0, 0.0);
            step_linker(&mut chain, &a, &z, &[], &frozen);
            assert!(chain.max_bond_residual(&a, &z) < 1e-9, "d = {d}");
        }
    }
}
