#![allow(dead_code)]

use std::path::{Path, PathBuf};

use molsteer::molio::SceneConfig;
use serde_json::json;

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn scene_path(name: &str) -> PathBuf {
    data_dir().join("scenes").join(format!("{name}.json"))
}

pub fn scene(name: &str) -> SceneConfig {
    SceneConfig::from_path(scene_path(name)).expect("bundled scene loads")
}

/// One fixed-column ATOM record.
pub fn atom_line(serial: u32, name: &str, res: &str, chain: char, seq: i32, xyz: [f64; 3], element: &str) -> String {
    format!(
        "ATOM  {serial:>5} {name:<4} {res:>3} {chain}{seq:>4}    {:>8.3}{:>8.3}{:>8.3}  1.00  0.00          {element:>2}",
        xyz[0], xyz[1], xyz[2]
    )
}

/// PDB text with one carbon atom at the origin.
pub fn single_carbon() -> String {
    format!("{}\nEND\n", atom_line(1, " C", "UNK", 'A', 1, [0.0, 0.0, 0.0], "C"))
}

/// Two single-carbon bodies (`hiro`, `kanji`) at zoom 1 with clash detection
/// at `cutoff`; kanji starts 10 Å along x.
pub fn two_carbon_scene(cutoff: f64) -> SceneConfig {
    let pdb = single_carbon();
    let text = json!({
        "schema_version": 1,
        "bodies": [
            {"marker": "hiro", "source": {"inline": pdb}},
            {"marker": "kanji", "source": {"inline": pdb}, "initial_pose": {"translation": [10.0, 0.0, 0.0]}}
        ],
        "features": {
            "key_distances": [
                {"label": "C-C", "a": {"marker": "hiro", "atom": "C"}, "b": {"marker": "kanji", "atom": "C"}}
            ],
            "clash": {"cutoff": cutoff}
        }
    });
    SceneConfig::from_json(&text.to_string()).expect("synthetic scene")
}

/// Trajectory CSV text moving kanji along x through `xs`, one tick per value
/// at 0.2 s spacing, with hiro fixed at the origin.
pub fn kanji_along_x(xs: &[f64]) -> String {
    let mut text = String::from("t,marker,qw,qx,qy,qz,tx,ty,tz,visible\n");
    for (k, x) in xs.iter().enumerate() {
        let t = k as f64 * 0.2;
        text.push_str(&format!("{t},hiro,1,0,0,0,0,0,0,1\n"));
        text.push_str(&format!("{t},kanji,1,0,0,0,{x},0,0,1\n"));
    }
    text
}

/// Column `name` of a report as strings.
pub fn column(report: &str, name: &str) -> Vec<String> {
    let mut reader = csv::Reader::from_reader(report.as_bytes());
    let header = reader.headers().expect("header").clone();
    let idx = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    reader.records().map(|r| r.expect("row")[idx].to_string()).collect()
}
