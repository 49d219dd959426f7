mod common;

use std::fs;
use std::process::Command;

use common::{column, kanji_along_x, scene, scene_path, two_carbon_scene};
use molsteer::engine::{Feature, Scalar};
use molsteer::replay::{record_schema, run_replay, CommandLog, PoseTrajectory, ReplayOptions, ReportSchema};
use molsteer::Error;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_molsteer-replay"))
}

#[test]
fn empty_trajectory_writes_header_only() {
    let config = scene("lys_glu");
    let schema = record_schema(&config);
    let out = run_replay(
        config,
        &PoseTrajectory::parse("").unwrap(),
        &CommandLog::default(),
        &ReplayOptions::default(),
    )
    .unwrap();
    assert!(out.frames.is_empty());
    assert_eq!(out.report, format!("{}\n", schema.names().join(",")));
}

#[test]
fn header_follows_schema() {
    let config = scene("lys_glu");
    let schema = record_schema(&config);
    let names = schema.names();
    assert_eq!(&names[..4], &["tick", "t", "kd:NZ-OE1", "kd:NZ-OE2"]);
    for scalar in Scalar::ALL {
        assert!(names.contains(&scalar.name()), "{} missing", scalar.name());
    }
    assert!(names.contains(&"stale:hiro") && names.contains(&"stale:kanji"));
    assert_eq!(names.last(), Some(&"errors"));
    let back = ReportSchema::from_json(&schema.to_json()).unwrap();
    assert_eq!(back, schema);
    let clash = schema.columns.iter().find(|c| c.name == "clash").unwrap();
    assert_eq!(clash.feature, Some(Feature::Clash));
    assert!(clash.nullable);
}

#[test]
fn clash_switches_at_the_cutoff() {
    let xs = [2.9, 2.999, 3.0, 3.001, 3.1];
    let traj = PoseTrajectory::parse(&kanji_along_x(&xs)).unwrap();
    let out = run_replay(
        two_carbon_scene(3.0),
        &traj,
        &CommandLog::default(),
        &ReplayOptions::default(),
    )
    .unwrap();
    assert_eq!(column(&out.report, "clash"), ["1", "1", "0", "0", "0"]);
    assert_eq!(column(&out.report, "clash_count"), ["1", "1", "0", "0", "0"]);
    let kd: Vec<f64> = column(&out.report, "kd:C-C")
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(kd, xs);
}

#[test]
fn haptic_pulse_tracks_clashing_ticks() {
    let traj = PoseTrajectory::parse(&kanji_along_x(&[5.0, 2.0, 2.0, 5.0, 2.0])).unwrap();
    let out = run_replay(
        two_carbon_scene(3.0),
        &traj,
        &CommandLog::default(),
        &ReplayOptions::default(),
    )
    .unwrap();
    assert_eq!(column(&out.report, "haptic_pulse"), ["0", "1", "1", "0", "1"]);
}

#[test]
fn commands_apply_before_the_first_tick_at_or_after_their_time() {
    let traj = PoseTrajectory::parse(&kanji_along_x(&[2.0; 6])).unwrap();
    let cmds = CommandLog::parse("0.3 force off\n0.6 force on\n").unwrap();
    let out = run_replay(two_carbon_scene(3.0), &traj, &cmds, &ReplayOptions::default()).unwrap();
    // ticks at 0, 0.2, 0.4, 0.6, 0.8, 1.0
    assert_eq!(column(&out.report, "clash"), ["1", "1", "", "1", "1", "1"]);
}

#[test]
fn failing_commands_are_reported_in_the_errors_column() {
    let traj = PoseTrajectory::parse(&kanji_along_x(&[5.0, 5.0])).unwrap();
    let cmds = CommandLog::parse("# no SAXS here\n0.1 saxs on\n").unwrap();
    let out = run_replay(two_carbon_scene(3.0), &traj, &cmds, &ReplayOptions::default()).unwrap();
    let errors = column(&out.report, "errors");
    assert_eq!(errors[0], "");
    assert!(errors[1].starts_with("line 2: "), "{}", errors[1]);
}

#[test]
fn unknown_marker_is_a_parse_error_with_line() {
    let text = "t,marker,qw,qx,qy,qz,tx,ty,tz,visible\n0,hiro,1,0,0,0,0,0,0,1\n0,bogus,1,0,0,0,0,0,0,1\n";
    let traj = PoseTrajectory::parse(text).unwrap();
    let err = run_replay(
        two_carbon_scene(3.0),
        &traj,
        &CommandLog::default(),
        &ReplayOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
}

#[test]
fn lost_marker_keeps_last_pose_and_sets_stale() {
    let mut text = kanji_along_x(&[5.0, 2.0]);
    text.push_str("0.4,hiro,1,0,0,0,0,0,0,1\n0.4,kanji,1,0,0,0,9,0,0,0\n");
    let out = run_replay(
        two_carbon_scene(3.0),
        &PoseTrajectory::parse(&text).unwrap(),
        &CommandLog::default(),
        &ReplayOptions::default(),
    )
    .unwrap();
    assert_eq!(column(&out.report, "stale:kanji"), ["0", "0", "1"]);
    assert_eq!(column(&out.report, "kd:C-C")[2], "2");
}

#[test]
fn ticks_max_truncates() {
    let traj = PoseTrajectory::parse(&kanji_along_x(&[5.0, 4.0, 3.0, 2.0])).unwrap();
    let options = ReplayOptions {
        ticks_max: Some(2),
        ..ReplayOptions::default()
    };
    let out = run_replay(two_carbon_scene(3.0), &traj, &CommandLog::default(), &options).unwrap();
    assert_eq!(out.frames.len(), 2);
}

#[test]
fn seed_override_is_deterministic() {
    let config = scene("lys_glu");
    let traj = PoseTrajectory::from_path(common::data_dir().join("scenes/lys_glu.trajectory.csv")).unwrap();
    let options = ReplayOptions {
        seed_override: Some(99),
        ..ReplayOptions::default()
    };
    let a = run_replay(config.clone(), &traj, &CommandLog::default(), &options).unwrap();
    let b = run_replay(config, &traj, &CommandLog::default(), &options).unwrap();
    assert_eq!(a.report, b.report);
}

#[test]
fn cli_writes_report_schema_and_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pcs.csv");
    let scenes = common::data_dir().join("scenes");
    let status = bin()
        .arg("--scene")
        .arg(scene_path("heme_pcs"))
        .arg("--trajectory")
        .arg(scenes.join("heme_pcs.trajectory.csv"))
        .arg("--out")
        .arg(&out)
        .args(["--series-every", "10", "--ticks-max", "25"])
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let report = fs::read_to_string(&out).unwrap();
    assert_eq!(report.lines().count(), 26);
    assert!(!report.contains('\r'));
    let schema = ReportSchema::from_json(&fs::read_to_string(dir.path().join("pcs.schema.json")).unwrap()).unwrap();
    assert_eq!(report.lines().next().unwrap(), schema.names().join(","));
    for tick in [1, 11, 21] {
        let series = dir.path().join(format!("pcs.tick{tick:05}.spectrum.csv"));
        assert!(series.exists(), "{}", series.display());
    }
    assert!(!dir.path().join("pcs.tick00002.spectrum.csv").exists());
}

#[test]
fn cli_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("bad.csv");
    fs::write(&traj, "t,marker,qw,qx,qy,qz,tx,ty,tz,visible\n0,hiro,1,0,0,0,0,0,0,2\n").unwrap();
    let run = |trajectory: &std::path::Path| {
        bin()
            .arg("--scene")
            .arg(scene_path("lys_glu"))
            .arg("--trajectory")
            .arg(trajectory)
            .arg("--out")
            .arg(dir.path().join("r.csv"))
            .output()
            .unwrap()
    };
    let bad = run(&traj);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
    let missing = run(&dir.path().join("nope.csv"));
    assert_eq!(missing.status.code(), Some(1));
}
