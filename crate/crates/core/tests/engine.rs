mod common;

use std::f64::consts::PI;

use common::{data_dir, scene, two_carbon_scene};
use molsteer::engine::{Arg, Engine, EngineCommand, Feature, FrameState, Scalar, Verb};
use molsteer::molio::SceneConfig;
use molsteer::replay::{run_replay, CommandLog, PoseTrajectory, ReplayOptions};
use molsteer::scene::Pose;
use molsteer::{Error, Vec3};

fn frames(config: SceneConfig, name: &str, commands: &str) -> Vec<FrameState> {
    let traj = PoseTrajectory::from_path(data_dir().join(format!("scenes/{name}.trajectory.csv"))).unwrap();
    let cmds = CommandLog::parse(commands).unwrap();
    run_replay(config, &traj, &cmds, &ReplayOptions::default())
        .unwrap()
        .frames
}

fn series(frames: &[FrameState], scalar: Scalar) -> Vec<Option<f64>> {
    frames.iter().map(|f| f.readouts.get(scalar)).collect()
}

fn of_feature(frames: &[FrameState], feature: Feature) -> Vec<Vec<Option<f64>>> {
    frames
        .iter()
        .map(|f| {
            f.readouts
                .iter()
                .filter(|(s, _)| s.feature() == feature)
                .map(|(_, v)| v)
                .collect()
        })
        .collect()
}

#[test]
fn same_seed_same_frames() {
    let a = frames(scene("lys_glu"), "lys_glu", "");
    let b = frames(scene("lys_glu"), "lys_glu", "");
    assert_eq!(a, b);
    assert!(a
        .iter()
        .any(|f| f.readouts.get(Scalar::ProtonHops).unwrap_or(0.0) > 0.0));
}

#[test]
fn disabling_one_feature_leaves_others_untouched() {
    let cases: [(&str, Feature, &[Feature]); 3] = [
        ("lys_glu", Feature::Proton, &[Feature::Clash, Feature::Electrostatics]),
        ("qop_contacts", Feature::Clash, &[Feature::Contacts]),
        ("heme_pcs", Feature::Pcs, &[Feature::Clash]),
    ];
    for (name, off, kept) in cases {
        let full = frames(scene(name), name, "");
        let mut config = scene(name);
        match off {
            Feature::Proton => config.features.proton.as_mut().unwrap().enabled = false,
            Feature::Clash => config.features.clash.as_mut().unwrap().enabled = false,
            Feature::Pcs => config.features.pcs.as_mut().unwrap().enabled = false,
            _ => unreachable!(),
        }
        let reduced = frames(config, name, "");
        for &feature in kept {
            assert_eq!(
                of_feature(&full, feature),
                of_feature(&reduced, feature),
                "{name}: {feature:?}"
            );
        }
        assert!(
            of_feature(&reduced, off).iter().flatten().all(Option::is_none),
            "{name}: {off:?} not null"
        );
        let kd = |fs: &[FrameState]| fs.iter().map(|f| f.key_distances.clone()).collect::<Vec<_>>();
        assert_eq!(kd(&full), kd(&reduced));
    }
}

#[test]
fn force_off_nulls_clash_and_electrostatics() {
    let fs = frames(scene("lys_glu"), "lys_glu", "4.0 force off\n4.4 force on\n");
    let at = |t: f64| fs.iter().find(|f| (f.time - t).abs() < 1e-9).unwrap();
    for t in [4.0, 4.2] {
        assert_eq!(at(t).readouts.get(Scalar::ClashActive), None);
        assert_eq!(at(t).readouts.get(Scalar::Electrostatics), None);
        assert!(!at(t).haptic_pulse);
    }
    assert!(at(4.4).readouts.get(Scalar::Electrostatics).is_some());
}

#[test]
fn unconfigured_verbs_are_errors() {
    let mut engine = Engine::new(two_carbon_scene(3.0)).unwrap();
    for verb in [Verb::Saxs, Verb::Proton, Verb::Reaction, Verb::Linker, Verb::Restraint] {
        let err = engine.handle_command(EngineCommand::new(verb, Arg::On)).unwrap_err();
        assert!(matches!(err, Error::Command(_)), "{verb:?}");
    }
    assert!(engine.handle_command(EngineCommand::new(Verb::Force, Arg::Off)).is_ok());
    assert!(!engine.is_enabled(Feature::Clash));
}

#[test]
fn clash_readouts_and_halos() {
    let mut engine = Engine::new(two_carbon_scene(3.0)).unwrap();
    engine
        .set_pose("kanji", Pose::from_translation(Vec3::new(2.5, 0.0, 0.0)))
        .unwrap();
    let f = engine.tick(0.2);
    assert_eq!(f.readouts.get(Scalar::ClashActive), Some(1.0));
    assert_eq!(f.readouts.get(Scalar::ClashMinDistance), Some(2.5));
    assert!(f.haptic_pulse);
    assert!(f.bodies.iter().all(|b| b.halos == [0.5]));
    engine
        .set_pose("kanji", Pose::from_translation(Vec3::new(3.5, 0.0, 0.0)))
        .unwrap();
    let f = engine.tick(0.2);
    assert_eq!(f.readouts.get(Scalar::ClashCount), Some(0.0));
    assert!(f.bodies.iter().all(|b| b.halos == [0.0]));
}

#[test]
fn pcs_matches_the_closed_form_along_the_orbit() {
    let fs = frames(scene("heme_pcs"), "heme_pcs", "");
    let config = scene("heme_pcs");
    let pcs = config.features.pcs.as_ref().unwrap();
    for f in &fs {
        let r = f.readouts.get(Scalar::PcsR).unwrap();
        let theta = f.readouts.get(Scalar::PcsTheta).unwrap();
        let expected = 1e4 * pcs.delta_chi_ax * (3.0 * theta.cos().powi(2) - 1.0) / (12.0 * PI * r.powi(3))
            + pcs.diamagnetic_shift;
        let shift = f.readouts.get(Scalar::PcsShift).unwrap();
        assert!((shift - expected).abs() < 1e-12, "t={} {shift} vs {expected}", f.time);
        let width = f.readouts.get(Scalar::PcsLinewidth).unwrap();
        assert!((width - (pcs.pre_constant / r.powi(6) + pcs.baseline_linewidth)).abs() < 1e-9);
    }
    let first = fs[0].spectrum.as_ref().unwrap();
    assert_eq!(first.axis.len(), pcs.grid.points);
    assert_eq!(first.intensity.len(), pcs.grid.points);
}

#[test]
fn diels_alder_forms_latches_and_resets() {
    let fs = frames(scene("diels_alder"), "diels_alder", "7.6 reaction reset\n");
    let formed = series(&fs, Scalar::ReactionFormed);
    let first = formed.iter().position(|v| *v == Some(1.0)).expect("product forms");
    let reset = fs.iter().position(|f| f.time >= 7.6 - 1e-9).unwrap();
    assert!(formed[first..reset].iter().all(|v| *v == Some(1.0)));
    assert!(fs[first].product.is_some());
    assert_eq!(formed[reset], Some(0.0));
    let face = series(&fs, Scalar::ReactionFace);
    let latched = face[first].unwrap();
    assert!(latched != 0.0);
    assert!(face[first..reset].iter().all(|v| *v == Some(latched)));
    let progress = series(&fs, Scalar::ReactionProgress);
    assert!(progress.iter().flatten().all(|p| (0.0..=1.0).contains(p)));
}

#[test]
fn restraint_pulls_toward_target_and_releases() {
    let fs = frames(
        scene("ubiquitin_uim"),
        "ubiquitin_uim",
        "8.2 restraint on\n9.4 restraint off\n",
    );
    let on: Vec<&FrameState> = fs
        .iter()
        .filter(|f| f.time >= 8.2 - 1e-9 && f.time < 9.4 - 1e-9)
        .collect();
    let d: Vec<f64> = on
        .iter()
        .map(|f| f.readouts.get(Scalar::RestraintDistance).unwrap())
        .collect();
    let target = 9.8;
    assert!((d.last().unwrap() - target).abs() < (d[0] - target).abs());
    assert!(fs
        .iter()
        .filter(|f| f.time < 8.2 - 1e-9)
        .all(|f| f.readouts.get(Scalar::RestraintDistance).is_none()));
}

#[test]
fn linker_reports_extension_states() {
    let fs = frames(scene("linker"), "linker", "");
    let ext = series(&fs, Scalar::LinkerExtension);
    for code in [0.0, 1.0, 2.0] {
        assert!(ext.contains(&Some(code)), "extension {code} never seen");
    }
    for f in &fs {
        let over = f.readouts.get(Scalar::LinkerExtension) == Some(2.0);
        assert_eq!(f.readouts.get(Scalar::LinkerForce).is_none(), over, "t={}", f.time);
        if let (Some(e), Some(s)) = (
            f.readouts.get(Scalar::LinkerFreeEnergy),
            f.readouts.get(Scalar::LinkerEntropicCost),
        ) {
            assert!(e >= 0.0 && s <= 0.0);
        }
        assert_eq!(f.linker.as_ref().map(Vec::len), Some(6));
    }
}

#[test]
fn saxs_chi_improves_toward_docking() {
    let fs = frames(scene("ubiquitin_uim"), "ubiquitin_uim", "0.0 saxs on\n");
    let chi: Vec<f64> = series(&fs, Scalar::SaxsChi).into_iter().flatten().collect();
    assert_eq!(chi.len(), fs.len());
    let docked = chi[40];
    assert!(docked < chi[0] && docked < 2.0, "far {} docked {docked}", chi[0]);
}

#[test]
fn contact_satisfaction_rises_on_approach() {
    let fs = frames(scene("qop_contacts"), "qop_contacts", "");
    let sat: Vec<f64> = series(&fs, Scalar::ContactSatisfaction).into_iter().flatten().collect();
    assert!(sat.first().unwrap() < sat.last().unwrap());
    assert!(sat.windows(2).take(30).all(|w| w[1] >= w[0]));
}

#[test]
fn proton_hops_only_inside_the_gate() {
    let fs = frames(scene("lys_glu"), "lys_glu", "");
    let mut hops = 0;
    for w in fs.windows(2) {
        let (before, after) = (&w[0], &w[1]);
        let d = after.readouts.get(Scalar::ProtonDistance).unwrap();
        if before.readouts.get(Scalar::ProtonHolder) != after.readouts.get(Scalar::ProtonHolder) {
            hops += 1;
            assert!(d < 2.0, "hop at t={} with d={d}", after.time);
        }
        if after.readouts.get(Scalar::HbondShown) == Some(1.0) {
            assert!(d >= 2.0, "H-bond shown inside the gate at t={}", after.time);
        }
    }
    assert!(hops > 0);
}
