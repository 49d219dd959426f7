//! Grid clash detection on two random bead clouds, checked against brute force.
use molsteer::interact::{detect_clashes, detect_clashes_brute_force, halo_opacities};
use molsteer::Vec3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cloud(rng: &mut ChaCha8Rng, n: usize, offset: f64) -> Vec<Vec3> {
    (0..n)
        .map(|_| {
            Vec3::new(
                rng.random_range(-10.0..10.0) + offset,
                rng.random_range(-10.0..10.0),
                rng.random_range(-10.0..10.0),
            )
        })
        .collect()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = cloud(&mut rng, 2000, 0.0);
    let b = cloud(&mut rng, 2000, 16.0);

    let started = std::time::Instant::now();
    let report = detect_clashes(&a, &b, 3.0);
    let elapsed = started.elapsed();
    let brute = detect_clashes_brute_force(&a, &b, 3.0);

    println!("{} clashing pairs in {elapsed:?}", report.pairs.len());
    println!("brute force agrees: {}", report.pairs == brute.pairs);
    if let Some(closest) = report.pairs.iter().min_by(|x, y| x.distance.total_cmp(&y.distance)) {
        println!(
            "closest pair a{} b{} at {:.3} Å",
            closest.a, closest.b, closest.distance
        );
    }
    let (halo_a, halo_b) = halo_opacities(&report, 0.4);
    let lit = |h: &[f64]| h.iter().filter(|&&o| o > 0.0).count();
    println!("halos on {} beads of A and {} of B", lit(&halo_a), lit(&halo_b));
}
