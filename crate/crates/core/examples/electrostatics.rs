//! Lysine NZ against glutamate carboxylate: the charge score as the two approach.
use molsteer::engine::{Engine, Scalar};
use molsteer::molio::SceneConfig;
use molsteer::scene::Pose;
use molsteer::Vec3;

fn main() -> molsteer::Result<()> {
    let scene = concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenes/lys_glu.json");
    let mut engine = Engine::new(SceneConfig::from_path(scene)?)?;
    let marker = engine.scene().bodies()[1].marker.clone();
    let start = engine.scene().pose(&marker)?;

    for step in 0..=8 {
        let shift = Vec3::new(0.9 * step as f64, 0.0, 0.0);
        engine.set_pose(&marker, Pose::new(start.rotation, start.translation + shift))?;
        let frame = engine.tick(0.05);
        println!(
            "step {step:>2}  electrostatics {:>8.4}  clash_min {:>6.2} Å",
            frame.readouts.get(Scalar::Electrostatics).unwrap_or(f64::NAN),
            frame.readouts.get(Scalar::ClashMinDistance).unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
