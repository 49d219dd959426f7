use crate::Vec3;

pub const DEFAULT_DASHED_POINTS: usize = 10;

/// `n` points strictly between `p1` and `p2`, evenly spaced.
pub fn dashed_line(p1: &Vec3, p2: &Vec3, n: usize) -> Vec<Vec3> {
    let step = (p2 - p1) / (n as f64 + 1.0);
    (1..=n).map(|k| p1 + step * k as f64).collect()
}

pub fn key_distance(a: &Vec3, b: &Vec3) -> f64 {
    (a - b).norm()
}
