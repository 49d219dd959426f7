//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero on a failure only when MOLSTEER_ACCEPTANCE_STRICT is set.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use molsteer::engine::{Arg, Engine, EngineCommand, FrameState, Scalar, Verb};
use molsteer::interact::detect_clashes;
use molsteer::interact::{proton_transfer_step, ProtonParams, ProtonState, Site};
use molsteer::linker::{build_linker, step_linker, SolverParams};
use molsteer::linker::{wlc_force, wlc_free_energy, WlcParams};
use molsteer::molio::SceneConfig;
use molsteer::observables::{pcs, polar_from_frame, ChiTensor, PolarCoord};
use molsteer::observables::{saxs_debye, sinc};
use molsteer::replay::PoseTrajectory;
use molsteer::scene::Pose;
use molsteer::{Error, Vec3};
use nalgebra::{Unit, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SCENES: [&str; 6] = [
    "lys_glu",
    "diels_alder",
    "heme_pcs",
    "ubiquitin_uim",
    "qop_contacts",
    "linker",
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn scene(name: &str) -> SceneConfig {
    SceneConfig::from_path(data_dir().join("scenes").join(format!("{name}.json"))).expect("bundled scene loads")
}

fn random_unit_quaternion(rng: &mut ChaCha8Rng) -> UnitQuaternion<f64> {
    let axis = Unit::new_normalize(Vec3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0) + 1e-9,
    ));
    UnitQuaternion::from_axis_angle(&axis, rng.random_range(-PI..PI))
}

fn random_cloud(rng: &mut ChaCha8Rng, n: usize, center: Vec3, spread: f64) -> Vec<Vec3> {
    (0..n)
        .map(|_| {
            center
                + Vec3::new(
                    rng.random_range(-spread..spread),
                    rng.random_range(-spread..spread),
                    rng.random_range(-spread..spread),
                )
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = 0;
    let mut total_pairs = 0;
    for _ in 0..1000 {
        let na = rng.random_range(1..=100);
        let nb = rng.random_range(1..=100);
        let spread = rng.random_range(3.0..25.0);
        let a = random_cloud(&mut rng, na, Vec3::zeros(), spread);
        let offset = Vec3::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0), 0.0);
        let b = random_cloud(&mut rng, nb, offset, spread);
        let grid: Vec<(usize, usize)> = detect_clashes(&a, &b, 3.0).pairs.iter().map(|p| (p.a, p.b)).collect();
        let mut oracle = Vec::new();
        for (i, p) in a.iter().enumerate() {
            for (j, q) in b.iter().enumerate() {
                if (p - q).norm() < 3.0 {
                    oracle.push((i, j));
                }
            }
        }
        total_pairs += oracle.len();
        if grid != oracle {
            mismatches += 1;
        }
    }
    let inside = detect_clashes(&[Vec3::zeros()], &[Vec3::new(2.999, 0.0, 0.0)], 3.0)
        .pairs
        .len();
    let outside = detect_clashes(&[Vec3::zeros()], &[Vec3::new(3.001, 0.0, 0.0)], 3.0)
        .pairs
        .len();
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && inside == 1 && outside == 0 && elapsed < Duration::from_secs(10),
        format!(
            "1000 scenes, {total_pairs} clashing pairs, {mismatches} mismatches; 2.999 Å -> {inside} pair, 3.001 Å -> {outside} pairs; {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut engine = Engine::new(scene("lys_glu")).expect("engine");
    let bead = |body: usize, label: &str| {
        let model = engine.model(body);
        model.beads[model.find(None, None, Some(label)).expect("atom bead")].center
    };
    let (nz, oe1, oe2) = (bead(0, "NZ"), bead(1, "OE1"), bead(1, "OE2"));
    let hiro = engine.scene().pose("hiro").expect("hiro");
    let kanji = engine.scene().pose("kanji").expect("kanji");
    let zoom = engine.model(1).zoom;

    // Put the carboxylate midpoint on the perpendicular through NZ so that
    // both oxygens sit exactly 2 Å away.
    let nz_world = hiro.frame(engine.model(0).zoom).apply(&nz);
    let (o1, o2) = (kanji.rotation * oe1, kanji.rotation * oe2);
    let axis = (o2 - o1).normalize();
    let half = 0.5 * (o2 - o1).norm();
    let away = -Vec3::x();
    let n = (away - axis * away.dot(&axis)).normalize();
    let target_mid = nz_world + (4.0 - half * half).sqrt() * n;
    let translation = (target_mid - 0.5 * (o1 + o2)) / zoom;
    engine
        .set_pose("kanji", Pose::new(kanji.rotation, translation))
        .expect("pose");

    let frame = engine.tick(0.2);
    let d1 = frame.key_distance("NZ-OE1").unwrap_or(f64::NAN);
    let d2 = frame.key_distance("NZ-OE2").unwrap_or(f64::NAN);
    let score = frame.readouts.get(Scalar::Electrostatics).unwrap_or(f64::NAN);
    outcome(
        (score + 0.5).abs() <= 1e-12,
        format!("d(NZ-OE1) = {d1:.12} Å, d(NZ-OE2) = {d2:.12} Å, score = {score:.15}"),
    )
}

fn criterion_3() -> Outcome {
    let params = ProtonParams::default();
    let mut open = ProtonState::new([0.7, 0.3], 20180901);
    let mut donor_ticks = 0u64;
    let n_open = 100_000;
    for _ in 0..n_open {
        proton_transfer_step(&mut open, 1.5, 0.2, &params);
        if open.holder == Site::Donor {
            donor_ticks += 1;
        }
    }
    let occupancy = donor_ticks as f64 / n_open as f64;
    let mut closed = ProtonState::new([0.7, 0.3], 20180901);
    let mut hops = 0u64;
    for k in 0..1_000_000u64 {
        let d = 2.0 + (k % 7) as f64;
        if proton_transfer_step(&mut closed, d, 0.2, &params) {
            hops += 1;
        }
    }
    outcome(
        (occupancy - 0.70).abs() <= 0.02 && hops == 0,
        format!("open gate: donor occupancy {occupancy:.4} over 1e5 ticks ({} hops); closed gate: {hops} hops over 1e6 ticks", open.hops),
    )
}

fn naive_debye(positions: &[Vec3], f: &[f64], q: f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..positions.len() {
        for j in 0..positions.len() {
            let r = (positions[i] - positions[j]).norm();
            let x = q * r;
            let s = if x == 0.0 { 1.0 } else { x.sin() / x };
            sum += f[i] * f[j] * s;
        }
    }
    sum
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let q: Vec<f64> = (0..51).map(|k| k as f64 * 0.01).collect();

    let positions = random_cloud(&mut rng, 40, Vec3::zeros(), 15.0);
    let f: Vec<f64> = (0..40).map(|_| rng.random_range(5.0..60.0)).collect();
    let profile = saxs_debye(&positions, &f, &q);
    let sum_f: f64 = f.iter().sum();
    let i0_err = rel(profile.intensity[0], sum_f * sum_f);

    let rotation = random_unit_quaternion(&mut rng);
    let shift = Vec3::new(12.0, -40.0, 7.5);
    let moved: Vec<Vec3> = positions.iter().map(|p| rotation * p + shift).collect();
    let moved_profile = saxs_debye(&moved, &f, &q);
    let invariance_err = profile
        .intensity
        .iter()
        .zip(&moved_profile.intensity)
        .map(|(a, b)| rel(*b, *a))
        .fold(0.0, f64::max);

    let five = random_cloud(&mut rng, 5, Vec3::zeros(), 8.0);
    let f5 = [7.0, 12.5, 30.0, 44.0, 18.25];
    let small = saxs_debye(&five, &f5, &q);
    let naive_err = q
        .iter()
        .zip(&small.intensity)
        .map(|(&qk, &ik)| rel(ik, naive_debye(&five, &f5, qk)))
        .fold(0.0, f64::max);

    let mut engine = Engine::new(scene("ubiquitin_uim")).expect("engine");
    engine
        .handle_command(EngineCommand::new(Verb::Saxs, Arg::On))
        .expect("saxs on");
    let beads: usize = (0..2).map(|b| engine.model(b).len()).sum();
    engine.tick(0.2);
    let ticks = 50;
    let start = Instant::now();
    let mut chi = f64::NAN;
    for _ in 0..ticks {
        chi = engine.tick(0.2).readouts.get(Scalar::SaxsChi).unwrap_or(f64::NAN);
    }
    let per_tick = start.elapsed().as_secs_f64() * 1e3 / ticks as f64;

    let sinc_ok = sinc(0.0) == 1.0;
    outcome(
        i0_err <= 1e-9 && invariance_err <= 1e-10 && naive_err <= 1e-12 && beads == 96 && per_tick < 20.0 && chi.is_finite() && sinc_ok,
        format!(
            "I(0) rel err {i0_err:.1e}; rigid rel err {invariance_err:.1e}; 5-bead naive rel err {naive_err:.1e}; {beads}-bead tick {per_tick:.3} ms (chi {chi:.3})"
        ),
    )
}

fn criterion_5() -> Outcome {
    let tensor = ChiTensor::axial(2.5, Vec3::zeros());
    let magic = (1.0 / 3f64.sqrt()).acos();
    let at = |theta: f64| {
        pcs(
            &PolarCoord {
                r: 6.0,
                theta,
                phi: 0.3,
            },
            &tensor,
        )
    };
    let zero = at(magic);
    let axial = at(0.0);
    let equatorial = at(PI / 2.0);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    let local_tensor = ChiTensor {
        delta_chi_ax: 2.5,
        delta_chi_rh: 0.8,
        frame: UnitQuaternion::from_euler_angles(0.3, -0.2, 1.1),
        metal: Vec3::new(1.0, 2.0, -0.5),
    };
    let probe_body = Vec3::new(4.0, -3.0, 5.0);
    let reference = {
        let p = polar_from_frame(&probe_body, &local_tensor, &Pose::identity(), 1.0).expect("polar");
        pcs(&p, &local_tensor)
    };
    for _ in 0..200 {
        let pose = Pose::new(
            random_unit_quaternion(&mut rng),
            Vec3::new(
                rng.random_range(-20.0..20.0),
                rng.random_range(-20.0..20.0),
                rng.random_range(-20.0..20.0),
            ),
        );
        let zoom = rng.random_range(0.5..4.0);
        let probe_world = pose.frame(zoom).apply(&probe_body);
        let p = polar_from_frame(&probe_world, &local_tensor, &pose, zoom).expect("polar");
        worst = worst.max(rel(pcs(&p, &local_tensor), reference));
    }
    outcome(
        zero.abs() < 1e-12 && axial > 0.0 && equatorial < 0.0 && worst < 1e-10,
        format!(
            "magic angle {zero:.1e} ppm; theta=0 {axial:+.4} ppm, theta=pi/2 {equatorial:+.4} ppm; worst rigid rel err {worst:.1e} over 200 poses"
        ),
    )
}

fn criterion_6() -> Outcome {
    let params = WlcParams {
        contour: 26.6,
        persistence: 4.0,
        kt: 4.11,
    };
    let kt_over_p = params.kt * 10.0 / params.persistence;
    let f0 = wlc_force(0.0, &params).unwrap_or(f64::NAN);
    let half = wlc_force(params.contour / 2.0, &params).unwrap_or(f64::NAN) / kt_over_p;

    let mut worst = 0.0f64;
    let n = 200;
    for k in 0..=n {
        let x = params.contour * (0.05 + 0.85 * k as f64 / n as f64);
        let h = 1e-4 * params.contour;
        let slope = (wlc_free_energy(x + h, &params).unwrap() - wlc_free_energy(x - h, &params).unwrap()) / (2.0 * h);
        worst = worst.max(rel(slope, wlc_force(x, &params).unwrap()));
    }
    let overstretched = [params.contour, params.contour * 1.01]
        .iter()
        .all(|&x| matches!(wlc_force(x, &params), Err(Error::Overstretched { .. })));

    outcome(
        f0 == 0.0 && (half - 0.75).abs() < 1e-12 && worst < 1e-6 && overstretched,
        format!(
            "f(0) = {f0}; f(L/2) = {half:.6} kT/P (required 0.75); dF/dx vs f worst rel err {worst:.1e}; x >= L overstretched: {overstretched}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = SolverParams::default();
    let (n, b) = (6, 3.8);
    let reach = (n + 1) as f64 * b;
    // Anchor A wanders; anchor B follows at a separation that swings between
    // 0.3 and 0.98 of the reach once per trajectory along a slowly turning
    // direction. Relative anchor motion stays below about 0.3 Å per tick.
    let (trajectories, ticks) = (200, 400);
    let mut worst = 0.0f64;
    let mut furthest = 0.0f64;
    for _ in 0..trajectories {
        let mut anchor_a = Vec3::zeros();
        let mut direction = random_unit_quaternion(&mut rng) * Vec3::x();
        let phase = rng.random_range(0.0..2.0 * PI);
        let separation = |k: usize| reach * (0.64 + 0.34 * (2.0 * PI * k as f64 / ticks as f64 + phase).sin());
        let mut anchor_b = anchor_a + direction * separation(0);
        let mut chain = build_linker(n, b, &anchor_a, &anchor_b, 1.0).expect("chain");
        step_linker(&mut chain, &anchor_a, &anchor_b, &[], &params);
        for k in 1..=ticks {
            anchor_a += Vec3::new(
                rng.random_range(-0.05..0.05),
                rng.random_range(-0.05..0.05),
                rng.random_range(-0.05..0.05),
            );
            let turn = Vec3::new(
                rng.random_range(-0.005..0.005),
                rng.random_range(-0.005..0.005),
                rng.random_range(-0.005..0.005),
            );
            direction = UnitQuaternion::from_scaled_axis(turn) * direction;
            anchor_b = anchor_a + direction * separation(k);
            furthest = furthest.max((anchor_b - anchor_a).norm() / reach);
            step_linker(&mut chain, &anchor_a, &anchor_b, &[], &params);
            worst = worst.max(chain.max_bond_residual(&anchor_a, &anchor_b));
        }
    }

    let rotation = random_unit_quaternion(&mut rng);
    let shift = Vec3::new(3.0, -8.0, 11.0);
    let motion = |p: &Vec3| rotation * p + shift;
    let (a0, b0, b1) = (
        Vec3::new(1.0, 2.0, 0.0),
        Vec3::new(15.0, 4.0, -3.0),
        Vec3::new(16.0, 6.0, -1.0),
    );
    let mut plain = build_linker(n, b, &a0, &b0, 1.0).expect("chain");
    let mut moved = plain.clone();
    moved.transform(motion);
    step_linker(&mut plain, &a0, &b1, &[], &params);
    step_linker(&mut moved, &motion(&a0), &motion(&b1), &[], &params);
    let equivariance = plain
        .positions
        .iter()
        .zip(&moved.positions)
        .map(|(p, m)| (motion(p) - m).norm())
        .fold(0.0, f64::max);

    outcome(
        worst < 1e-3 * b && equivariance < 1e-8,
        format!(
            "worst residual {worst:.2e} Å (limit {:.1e}) over {trajectories} trajectories reaching {furthest:.3} of max reach; equivariance error {equivariance:.1e} Å",
            1e-3 * b
        ),
    )
}

fn contact_lines(frame: &FrameState) -> Vec<(String, f64, f64)> {
    frame
        .lines
        .iter()
        .filter(|l| l.label.starts_with("contact "))
        .map(|l| (l.label.clone(), (l.from - l.to).norm(), l.width))
        .collect()
}

fn criterion_8() -> Outcome {
    let config = scene("qop_contacts");
    let cutoff = config
        .features
        .contacts
        .as_ref()
        .map(|c| c.satisfaction_cutoff)
        .unwrap_or(8.0);
    let table = config
        .features
        .contacts
        .as_ref()
        .expect("contacts")
        .source
        .text()
        .expect("inline")
        .to_string();
    let scores: Vec<(String, f64)> = table
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .filter_map(|l| {
            let cols: Vec<&str> = l.split_whitespace().collect();
            (cols.len() == 3).then(|| (format!("contact {} {}", cols[0], cols[1]), cols[2].parse().unwrap()))
        })
        .collect();
    let max_score = scores.iter().map(|s| s.1).fold(f64::MIN, f64::max);
    let min_score = scores.iter().map(|s| s.1).fold(f64::MAX, f64::min);

    let trajectory =
        PoseTrajectory::from_path(data_dir().join("scenes/qop_contacts.trajectory.csv")).expect("trajectory");
    let docked = trajectory
        .rows
        .iter()
        .rev()
        .find(|r| r.marker == "kanji")
        .expect("kanji row")
        .pose;
    let mut engine = Engine::new(config.clone()).expect("engine");
    engine.set_pose("kanji", docked).expect("pose");
    let frame = engine.tick(0.2);
    let lines = contact_lines(&frame);
    let score_of = |label: &str| scores.iter().find(|s| s.0 == label).map(|s| s.1);
    let high: Vec<&(String, f64, f64)> = lines
        .iter()
        .filter(|l| score_of(&l.0).is_some_and(|s| s >= 0.8 * max_score))
        .collect();
    let low = lines.iter().find(|l| score_of(&l.0) == Some(min_score));
    let property = match low {
        Some(low) => {
            high.iter().all(|h| h.1 < cutoff) && low.1 >= cutoff && high.iter().all(|h| low.2 > h.2) && !high.is_empty()
        }
        None => false,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut disagreements = 0;
    let mut seen = Vec::new();
    for _ in 0..100 {
        let jitter = Vec3::new(
            rng.random_range(-6.0..6.0),
            rng.random_range(-6.0..6.0),
            rng.random_range(-6.0..6.0),
        );
        let rotation = UnitQuaternion::from_scaled_axis(Vec3::new(
            rng.random_range(-0.6..0.6),
            rng.random_range(-0.6..0.6),
            rng.random_range(-0.6..0.6),
        ));
        let pose = Pose::new(rotation * docked.rotation, docked.translation + jitter);
        engine.set_pose("kanji", pose).expect("pose");
        let frame = engine.tick(0.2);
        let lines = contact_lines(&frame);
        let recount = lines.iter().filter(|l| l.1 < cutoff).count() as f64 / lines.len() as f64;
        let reported = frame.readouts.get(Scalar::ContactSatisfaction).unwrap_or(f64::NAN);
        if (recount - reported).abs() > 1e-15 {
            disagreements += 1;
        }
        seen.push(recount);
    }
    let distinct = {
        seen.sort_by(f64::total_cmp);
        seen.dedup();
        seen.len()
    };
    let low_width = low.map(|l| l.2).unwrap_or(f64::NAN);
    let high_width = high.iter().map(|h| h.2).fold(0.0, f64::max);
    outcome(
        property && disagreements == 0,
        format!(
            "docked: {} high contacts satisfied, low contact width {low_width:.3} > max high width {high_width:.3}; recount disagreements {disagreements}/100 ({distinct} distinct fractions)",
            high.len()
        ),
    )
}

fn replay(bin: &Path, name: &str, out: &Path) -> std::io::Result<Vec<u8>> {
    let scenes = data_dir().join("scenes");
    let status = Command::new(bin)
        .arg("--scene")
        .arg(scenes.join(format!("{name}.json")))
        .arg("--trajectory")
        .arg(scenes.join(format!("{name}.trajectory.csv")))
        .arg("--commands")
        .arg(scenes.join(format!("{name}.commands.txt")))
        .arg("--out")
        .arg(out)
        .output()?;
    if !status.status.success() {
        return Err(std::io::Error::other(
            String::from_utf8_lossy(&status.stderr).into_owned(),
        ));
    }
    fs::read(out)
}

fn criterion_9() -> Outcome {
    let bin = Path::new(env!("CARGO_BIN_EXE_molsteer-replay"));
    let golden_dir = data_dir().join("golden");
    let bless = std::env::var_os("MOLSTEER_BLESS").is_some();
    let tmp = tempfile::tempdir().expect("tempdir");
    let start = Instant::now();
    let mut problems = Vec::new();
    for name in SCENES {
        let first = replay(bin, name, &tmp.path().join(format!("{name}.a.csv")));
        let second = replay(bin, name, &tmp.path().join(format!("{name}.b.csv")));
        let (first, second) = match (first, second) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                problems.push(format!("{name}: {e}"));
                continue;
            }
        };
        if first != second {
            problems.push(format!("{name}: runs differ"));
        }
        let golden = golden_dir.join(format!("{name}.csv"));
        if bless {
            fs::create_dir_all(&golden_dir).expect("golden dir");
            fs::write(&golden, &first).expect("write golden");
        } else {
            match fs::read(&golden) {
                Ok(g) if g == first => {}
                Ok(_) => problems.push(format!("{name}: differs from golden")),
                Err(e) => problems.push(format!("{name}: golden unreadable ({e})")),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        problems.push(format!("took {:.1} s", elapsed.as_secs_f64()));
    }
    let detail = if problems.is_empty() {
        format!(
            "{} scenes replayed twice, identical and matching golden reports{}; {:.2} s",
            SCENES.len(),
            if bless { " (blessed)" } else { "" },
            elapsed.as_secs_f64()
        )
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("clash grid matches brute force", criterion_1),
        ("salt-bridge electrostatic score", criterion_2),
        ("proton transfer occupancy", criterion_3),
        ("Debye SAXS", criterion_4),
        ("pseudocontact shift", criterion_5),
        ("worm-like chain", criterion_6),
        ("linker solver", criterion_7),
        ("contact restraints", criterion_8),
        ("replay determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let result = check();
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {title}: {}",
            k + 1,
            if result.pass { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 || std::env::var_os("MOLSTEER_ACCEPTANCE_STRICT").is_none() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
