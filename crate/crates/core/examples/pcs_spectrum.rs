//! Pseudocontact shift of a probe circling an axial tensor, with a simulated line.
use molsteer::observables::{linspace, pcs, polar_from_frame, simulate_spectrum, ChiTensor};
use molsteer::scene::Pose;
use molsteer::Vec3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> molsteer::Result<()> {
    let tensor = ChiTensor::axial(3.0, Vec3::zeros());
    let pose = Pose::identity();
    let axis = linspace(-2.0, 6.0, 800);
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    for deg in (0..=180).step_by(30) {
        let theta = (deg as f64).to_radians();
        let probe = Vec3::new(theta.sin(), 0.0, theta.cos()) * 8.0;
        let polar = polar_from_frame(&probe, &tensor, &pose, 1.0)?;
        let shift = 1.0 + pcs(&polar, &tensor);
        let spectrum = simulate_spectrum(shift, 25.0, 600.0, &axis, 0.01, &mut rng);
        let peak = spectrum
            .intensity
            .iter()
            .zip(&spectrum.axis)
            .max_by(|x, y| x.0.total_cmp(y.0))
            .map(|(_, &x)| x)
            .unwrap_or(f64::NAN);
        println!("theta {deg:>3}°  shift {shift:+.4} ppm  peak near {peak:+.3} ppm");
    }
    Ok(())
}
