//! Headless replay: scene + pose trajectory + command log in, per-tick CSV
//! report out.
//!
//! Trajectory CSV header: `t,marker,qw,qx,qy,qz,tx,ty,tz,visible`. Rows must
//! have non-decreasing `t`; every distinct `t` is one tick. Command logs hold
//! one `t verb arg` per line, `#` starts a comment; a command applies before
//! the first tick at or after its time.
//!
//! The report has one row per tick. Empty cells are nulls.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{Engine, EngineCommand, Feature, FrameState, Scalar};
use crate::error::{Error, Result};
use crate::molio::SceneConfig;
use crate::observables::write_profile;
use crate::scene::Pose;

pub const REPORT_FORMAT: &str = "molsteer-report";
pub const REPORT_VERSION: u32 = 1;

/// Quaternions further than this from unit norm are rejected.
pub const QUAT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct PoseRow {
    /// 1-based line in the source file.
    pub line: usize,
    pub t: f64,
    pub marker: String,
    pub pose: Pose,
    pub visible: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoseTrajectory {
    pub rows: Vec<PoseRow>,
}

#[derive(Debug, Deserialize)]
struct RawRow {
    t: f64,
    marker: String,
    qw: f64,
    qx: f64,
    qy: f64,
    qz: f64,
    tx: f64,
    ty: f64,
    tz: f64,
    visible: u8,
}

const TRAJECTORY_HEADER: [&str; 10] = ["t", "marker", "qw", "qx", "qy", "qz", "tx", "ty", "tz", "visible"];

impl PoseTrajectory {
    pub fn parse(text: &str) -> Result<PoseTrajectory> {
        if text.trim().is_empty() {
            return Ok(PoseTrajectory::default());
        }
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        if header != TRAJECTORY_HEADER {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header `{}`", TRAJECTORY_HEADER.join(",")),
            });
        }
        let mut rows = Vec::new();
        let mut last_t = f64::NEG_INFINITY;
        for record in reader.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let bad = |message: String| Error::Parse { line, message };
            let raw: RawRow = record.deserialize(None).map_err(|e| bad(e.to_string()))?;
            if !raw.t.is_finite() || raw.t < 0.0 {
                return Err(bad(format!("time {} must be finite and >= 0", raw.t)));
            }
            if raw.t < last_t {
                return Err(bad(format!("time {} goes backwards (previous {last_t})", raw.t)));
            }
            if raw.visible > 1 {
                return Err(bad(format!("visible must be 0 or 1, got {}", raw.visible)));
            }
            last_t = raw.t;
            let pose = Pose::from_components(
                [raw.qw, raw.qx, raw.qy, raw.qz],
                [raw.tx, raw.ty, raw.tz],
                QUAT_TOLERANCE,
            )
            .map_err(|e| bad(e.to_string()))?
            .at(raw.t);
            rows.push(PoseRow {
                line,
                t: raw.t,
                marker: raw.marker,
                pose,
                visible: raw.visible == 1,
            });
        }
        Ok(PoseTrajectory { rows })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<PoseTrajectory> {
        let path = path.as_ref();
        Self::parse(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    /// Rows grouped by time, in order.
    pub fn ticks(&self) -> Vec<(f64, &[PoseRow])> {
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.rows.len() {
            let t = self.rows[start].t;
            let end = start + self.rows[start..].iter().take_while(|r| r.t == t).count();
            out.push((t, &self.rows[start..end]));
            start = end;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimedCommand {
    pub line: usize,
    pub t: f64,
    pub command: EngineCommand,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CommandLog {
    pub commands: Vec<TimedCommand>,
}

impl CommandLog {
    pub fn parse(text: &str) -> Result<CommandLog> {
        let mut commands = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse { line, message };
            let parts: Vec<&str> = content.split_whitespace().collect();
            let [t, verb, arg] = parts[..] else {
                return Err(bad(format!("expected `t verb arg`, got `{content}`")));
            };
            let t: f64 = t.parse().map_err(|_| bad(format!("bad time `{t}`")))?;
            if !t.is_finite() {
                return Err(bad(format!("bad time `{t}`")));
            }
            let command = EngineCommand::parse(verb, arg).map_err(|e| bad(e.to_string()))?;
            commands.push(TimedCommand { line, t, command });
        }
        commands.sort_by(|a, b| a.t.total_cmp(&b.t));
        Ok(CommandLog { commands })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<CommandLog> {
        let path = path.as_ref();
        Self::parse(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReplayOptions {
    /// Write spectrum/SAXS series every N ticks (first tick included).
    pub series_every: Option<usize>,
    pub seed_override: Option<u64>,
    pub ticks_max: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dialect {
    pub delimiter: String,
    pub decimal: String,
    pub encoding: String,
    pub line_terminator: String,
    pub null: String,
}

impl Default for Dialect {
    fn default() -> Self {
        Self {
            delimiter: ",".into(),
            decimal: ".".into(),
            encoding: "UTF-8".into(),
            line_terminator: "LF".into(),
            null: String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
    /// Feature that fills the column, if any.
    pub feature: Option<Feature>,
    pub nullable: bool,
    pub description: String,
}

/// Machine-readable description of a report's columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSchema {
    pub format: String,
    pub version: u32,
    pub dialect: Dialect,
    pub columns: Vec<Column>,
}

impl ReportSchema {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schema always serializes")
    }

    pub fn from_json(text: &str) -> Result<ReportSchema> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }
}

fn column(
    name: impl Into<String>,
    unit: &str,
    feature: Option<Feature>,
    nullable: bool,
    description: impl Into<String>,
) -> Column {
    Column {
        name: name.into(),
        unit: unit.into(),
        feature,
        nullable,
        description: description.into(),
    }
}

/// Report columns for a scene. Depends on the config only.
pub fn record_schema(config: &SceneConfig) -> ReportSchema {
    let mut columns = vec![
        column("tick", "count", None, false, "1-based tick index."),
        column("t", "s", None, false, "Trajectory time of the tick."),
    ];
    for kd in &config.features.key_distances {
        columns.push(column(
            format!("kd:{}", kd.label),
            "Å",
            None,
            false,
            format!("Key distance {}.", kd.label),
        ));
    }
    for &s in Scalar::ALL {
        columns.push(column(s.name(), s.unit(), Some(s.feature()), true, s.description()));
    }
    columns.push(column(
        "haptic_pulse",
        "flag",
        Some(Feature::Clash),
        false,
        "1 when the host should pulse.",
    ));
    for body in &config.bodies {
        columns.push(column(
            format!("stale:{}", body.marker),
            "flag",
            None,
            false,
            format!("1 while marker {} is lost.", body.marker),
        ));
    }
    columns.push(column(
        "errors",
        "text",
        None,
        false,
        "Feature and command errors, `;`-separated.",
    ));
    ReportSchema {
        format: REPORT_FORMAT.into(),
        version: REPORT_VERSION,
        dialect: Dialect::default(),
        columns,
    }
}

/// Everything a replay produced, in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplayOutput {
    pub schema: ReportSchema,
    /// CSV report text.
    pub report: String,
    /// (file suffix, CSV text) series payloads.
    pub series: Vec<(String, String)>,
    pub frames: Vec<FrameState>,
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn frame_row(frame: &FrameState, t: f64, schema_kd: &[String], markers: &[String], notes: &[String]) -> Vec<String> {
    let mut row = vec![frame.tick.to_string(), t.to_string()];
    for label in schema_kd {
        row.push(frame.key_distance(label).map(|d| d.to_string()).unwrap_or_default());
    }
    for &s in Scalar::ALL {
        row.push(frame.readouts.get(s).map(|v| v.to_string()).unwrap_or_default());
    }
    row.push(flag(frame.haptic_pulse).into());
    for marker in markers {
        let stale = frame.bodies.iter().any(|b| &b.marker == marker && !b.visible);
        row.push(flag(stale).into());
    }
    let mut errors: Vec<String> = notes.to_vec();
    errors.extend(
        frame
            .errors
            .iter()
            .map(|e| format!("{}: {}", e.feature.name(), e.message)),
    );
    row.push(errors.join("; "));
    row
}

fn spectrum_csv(frame: &FrameState) -> Option<String> {
    let s = frame.spectrum.as_ref()?;
    let mut out = String::from("shift_ppm,intensity\n");
    for (x, y) in s.axis.iter().zip(&s.intensity) {
        let _ = writeln!(out, "{x},{y}");
    }
    Some(out)
}

fn saxs_csv(frame: &FrameState) -> Option<String> {
    let s = frame.saxs.as_ref()?;
    let mut out = String::from("q,calculated,reference,sigma\n");
    for (q, i) in s.calculated.q.iter().zip(&s.calculated.intensity) {
        let (r, sigma) = match s.reference.interpolate(*q) {
            Some((r, sigma)) => (r.to_string(), sigma.map(|x| x.to_string()).unwrap_or_default()),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(out, "{q},{i},{r},{sigma}");
    }
    Some(out)
}

/// Run a replay fully in memory.
pub fn run_replay(
    config: SceneConfig,
    trajectory: &PoseTrajectory,
    commands: &CommandLog,
    options: &ReplayOptions,
) -> Result<ReplayOutput> {
    for row in &trajectory.rows {
        if config.body(&row.marker).is_none() {
            return Err(Error::Parse {
                line: row.line,
                message: format!("unknown marker `{}`", row.marker),
            });
        }
    }
    let schema = record_schema(&config);
    let kd_labels: Vec<String> = config.features.key_distances.iter().map(|k| k.label.clone()).collect();
    let markers: Vec<String> = config.bodies.iter().map(|b| b.marker.clone()).collect();
    let mut engine = match options.seed_override {
        Some(seed) => Engine::with_seed(config, seed)?,
        None => Engine::new(config)?,
    };

    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(schema.names())?;

    let mut series = Vec::new();
    let mut frames = Vec::new();
    let mut pending = commands.commands.iter().peekable();
    let mut previous_t: Option<f64> = None;
    let mut reference_written = false;
    for (k, (t, rows)) in trajectory.ticks().into_iter().enumerate() {
        if options.ticks_max.is_some_and(|max| k >= max) {
            break;
        }
        let mut notes = Vec::new();
        while let Some(cmd) = pending.next_if(|c| c.t <= t) {
            if let Err(e) = engine.handle_command(cmd.command) {
                notes.push(format!("line {}: {e}", cmd.line));
            }
        }
        for row in rows {
            if row.visible {
                engine.set_pose(&row.marker, row.pose)?;
            } else {
                engine.mark_lost(&row.marker)?;
            }
        }
        let dt = previous_t.map_or(t, |p| t - p);
        previous_t = Some(t);
        let frame = engine.tick(dt);
        writer.write_record(frame_row(&frame, t, &kd_labels, &markers, &notes))?;

        if options.series_every.is_some_and(|n| n > 0 && k % n == 0) {
            if let Some(text) = spectrum_csv(&frame) {
                series.push((format!("tick{:05}.spectrum.csv", frame.tick), text));
            }
            if let Some(text) = saxs_csv(&frame) {
                series.push((format!("tick{:05}.saxs.csv", frame.tick), text));
            }
            if let (false, Some(s)) = (reference_written, frame.saxs.as_ref()) {
                series.push(("saxs_reference.dat".into(), write_profile(&s.reference)));
                reference_written = true;
            }
        }
        frames.push(frame);
    }
    let bytes = writer.into_inner().map_err(|e| Error::Wire(e.to_string()))?;
    let report = String::from_utf8(bytes).expect("csv output is UTF-8");
    Ok(ReplayOutput {
        schema,
        report,
        series,
        frames,
    })
}

/// Input and output locations of a replay run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayPaths {
    pub scene: PathBuf,
    pub trajectory: PathBuf,
    pub commands: Option<PathBuf>,
    /// Report CSV; the schema goes next to it as `<stem>.schema.json`, series
    /// files as `<stem>.<suffix>`.
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub ticks: usize,
    pub files: Vec<PathBuf>,
}

/// Load inputs from disk, replay and write all outputs.
pub fn run_files(paths: &ReplayPaths, options: &ReplayOptions) -> Result<RunSummary> {
    let config = SceneConfig::from_path(&paths.scene)?;
    let trajectory = PoseTrajectory::from_path(&paths.trajectory)?;
    let commands = match &paths.commands {
        Some(p) => CommandLog::from_path(p)?,
        None => CommandLog::default(),
    };
    let output = run_replay(config, &trajectory, &commands, options)?;

    let stem = paths
        .out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    let sibling = |suffix: &str| paths.out.with_file_name(format!("{stem}.{suffix}"));
    let mut files = BTreeMap::new();
    files.insert(paths.out.clone(), output.report);
    files.insert(sibling("schema.json"), output.schema.to_json());
    for (suffix, text) in output.series {
        files.insert(sibling(&suffix), text);
    }
    for (path, text) in &files {
        fs::write(path, text).map_err(|e| Error::io(path, e))?;
    }
    Ok(RunSummary {
        ticks: output.frames.len(),
        files: files.into_keys().collect(),
    })
}

/// CLI exit code for a failed run: 2 for bad inputs, 1 for I/O trouble.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Io { .. } => 1,
        _ => 2,
    }
}
