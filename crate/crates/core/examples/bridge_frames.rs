//! Drive an engine through the handle registry and decode the wire frames.
use molsteer::bridge::{decode, Encoding, Registry};
use molsteer::molio::SceneConfig;

fn main() -> molsteer::Result<()> {
    let scene = concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenes/ubiquitin_uim.json");
    let json = SceneConfig::from_path(scene)?.to_json();

    let mut registry = Registry::new();
    let handle = registry.create(json.as_bytes())?;
    println!(
        "handle {handle}, empty frame {} bytes",
        registry.read(handle, Encoding::Binary)?.len()
    );

    let reply = registry.push_command(handle, "saxs", "on")?;
    println!("saxs on: {reply}");
    registry.push_pose(handle, "kanji", [1.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0], true)?;

    for _ in 0..3 {
        let binary = registry.tick_and_read(handle, 0.05, Encoding::Binary)?;
        let json = registry.read(handle, Encoding::Json)?;
        let frame = decode(&binary)?;
        println!(
            "tick {} binary {} B json {} B  bodies {}  readouts set {}",
            frame.tick,
            binary.len(),
            json.len(),
            frame.bodies.len(),
            frame.readouts.iter().filter(|(_, v)| v.is_some()).count()
        );
    }
    registry.destroy(handle)?;
    Ok(())
}
