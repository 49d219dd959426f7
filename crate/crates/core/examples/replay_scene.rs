//! Replay a recorded trajectory with its command log and print report columns.
use molsteer::molio::SceneConfig;
use molsteer::replay::{run_replay, CommandLog, PoseTrajectory, ReplayOptions};

fn main() -> molsteer::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "diels_alder".into());
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenes");
    let config = SceneConfig::from_path(format!("{dir}/{name}.json"))?;
    let trajectory = PoseTrajectory::from_path(format!("{dir}/{name}.trajectory.csv"))?;
    let commands = CommandLog::from_path(format!("{dir}/{name}.commands.txt"))?;

    let output = run_replay(config, &trajectory, &commands, &ReplayOptions::default())?;
    println!("{} ticks, {} columns", output.frames.len(), output.schema.columns.len());
    for line in output.report.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
