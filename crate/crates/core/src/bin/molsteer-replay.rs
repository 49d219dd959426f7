use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use molsteer::replay::{exit_code, run_files, ReplayOptions, ReplayPaths};

/// Replay a pose trajectory through a scene and write a per-tick report.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long)]
    trajectory: PathBuf,
    #[arg(long)]
    commands: Option<PathBuf>,
    /// Report CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Write spectrum/SAXS series files every N ticks.
    #[arg(long, value_name = "N")]
    series_every: Option<usize>,
    #[arg(long)]
    seed_override: Option<u64>,
    #[arg(long)]
    ticks_max: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let paths = ReplayPaths {
        scene: cli.scene,
        trajectory: cli.trajectory,
        commands: cli.commands,
        out: cli.out,
    };
    let options = ReplayOptions {
        series_every: cli.series_every,
        seed_override: cli.seed_override,
        ticks_max: cli.ticks_max,
    };
    match run_files(&paths, &options) {
        Ok(summary) => {
            eprintln!("{} ticks, {} files written", summary.ticks, summary.files.len());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
