use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::command::{Arg, EngineCommand};
use super::frame::{BodyFrame, DashedLine, FeatureError, FrameState, Line, SaxsSeries};
use super::readouts::{Feature, Readouts, Scalar};
use crate::error::{Error, Result};
use crate::interact::{
    dashed_line, detect_clashes, diels_alder_step, electrostatic_term, halo_opacities, hbond_candidate, key_distance,
    product_topology, proton_transfer_step, ChargedPair, ProductTopology, ProtonParams, ProtonState, ReactionGeometry,
    ReactionParams, ReactionState, Site,
};
use crate::linker::{
    build_linker, entropic_cost, extension_check, step_linker, wlc_force, wlc_free_energy, Extension, LinkerChain,
    Obstacle, SolverParams, WlcParams,
};
use crate::model::{build_model, AminoAcidTable, BeadModel, RadiusRule};
use crate::molio::scene_config::{ClashConfig, KeyDistanceConfig, Origin, PcsConfig, SaxsReferenceConfig, Selector};
use crate::molio::{assign_neutral_ph_charges_with, parse_pdb, ChargeOptions, Molecule, SceneConfig};
use crate::observables::{
    fit_saxs, linspace, parse_profile, pcs, polar_from_frame, pre_linewidth, saxs_debye, simulate_spectrum,
    synth_reference, ChiTensor, SaxsProfile,
};
use crate::restraints::{
    anchor_opacity, contact_geometry, load_contacts, satisfaction, BindingRestraint, ContactSet, ContactStyle,
};
use crate::scene::{world_positions, Pose, RigidFrame, SceneState};
use crate::Vec3;

/// Default tick length, seconds.
pub const DEFAULT_DT: f64 = 0.2;

/// (body index, bead index).
pub type BeadRef = (usize, usize);

/// Seed of a feature's private random stream.
pub fn stream_seed(seed: u64, feature: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in feature.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    seed ^ hash
}

fn stream(seed: u64, feature: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(seed, feature))
}

struct ProtonSetup {
    donor: BeadRef,
    proton: BeadRef,
    acceptor: BeadRef,
    params: ProtonParams,
    window: [f64; 2],
    bond_length: f64,
    state: ProtonState,
}

struct ReactionSetup {
    ends: [BeadRef; 2],
    dienophile: [BeadRef; 2],
    plane: [BeadRef; 3],
    params: ReactionParams,
    state: ReactionState,
    /// Dienophile body frame relative to the diene body, fixed at formation.
    lock: Option<RigidFrame>,
    product: Option<ProductTopology>,
}

struct PcsSetup {
    body: usize,
    tensor: ChiTensor,
    probe: BeadRef,
    config: PcsConfig,
    axis: Vec<f64>,
    rng: ChaCha8Rng,
}

struct SaxsSetup {
    q: Vec<f64>,
    reference: SaxsProfile,
}

struct ContactsSetup {
    set: ContactSet,
    style: ContactStyle,
}

struct RestraintSetup {
    body_a: usize,
    body_b: usize,
    restraint: BindingRestraint,
}

struct LinkerSetup {
    anchors: [BeadRef; 2],
    chain: LinkerChain,
    solver: SolverParams,
    wlc: WlcParams,
    /// Per body: beads left out of the obstacle set.
    excluded: Vec<Vec<bool>>,
}

/// Runs the enabled features over the current poses once per tick.
pub struct Engine {
    config: SceneConfig,
    seed: u64,
    scene: SceneState,
    molecules: Vec<Molecule>,
    tick: u64,
    time: f64,
    enabled: [bool; Feature::ALL.len()],
    key_distances: Vec<(KeyDistanceConfig, BeadRef, BeadRef)>,
    clash: Option<ClashConfig>,
    electrostatics: Option<Vec<(BeadRef, BeadRef, f64)>>,
    proton: Option<ProtonSetup>,
    reaction: Option<ReactionSetup>,
    pcs: Option<PcsSetup>,
    saxs: Option<std::result::Result<SaxsSetup, String>>,
    contacts: Option<std::result::Result<ContactsSetup, String>>,
    restraint: Option<RestraintSetup>,
    linker: Option<LinkerSetup>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("scene", &self.config.name)
            .field("tick", &self.tick)
            .field("time", &self.time)
            .finish_non_exhaustive()
    }
}

fn load_molecule(body: &crate::molio::scene_config::BodyConfig) -> Result<Molecule> {
    let molecule = parse_pdb(body.source.text()?)?;
    let molecule = assign_neutral_ph_charges_with(
        molecule,
        ChargeOptions {
            charged_termini: body.charged_termini,
        },
    );
    Ok(match &body.origin {
        Origin::AsIs => molecule,
        Origin::Centroid => molecule.center_at_origin(),
        Origin::Atom(sel) => {
            let index = molecule
                .atoms
                .iter()
                .position(|a| {
                    sel.chain.is_none_or(|c| c == a.chain_id)
                        && sel.seq.is_none_or(|s| s == a.residue_seq)
                        && sel.atom.as_deref().is_none_or(|n| n == a.name)
                })
                .ok_or_else(|| Error::Config(format!("origin selector matches no atom in `{}`", body.marker)))?;
            molecule.anchor_at(index)
        }
    })
}

impl Engine {
    pub fn new(config: SceneConfig) -> Result<Engine> {
        config.validate()?;
        let seed = config.rng_seed.unwrap_or(0);
        let mut scene = SceneState::new();
        let mut molecules = Vec::new();
        for body in &config.bodies {
            let molecule = load_molecule(body)?;
            let model = build_model(&molecule, body.scheme, body.zoom)?;
            scene.add_body(body.marker.clone(), model, Pose::from_config(&body.initial_pose)?)?;
            molecules.push(molecule);
        }

        let mut engine = Engine {
            seed,
            scene,
            molecules,
            tick: 0,
            time: 0.0,
            enabled: [false; Feature::ALL.len()],
            key_distances: Vec::new(),
            clash: None,
            electrostatics: None,
            proton: None,
            reaction: None,
            pcs: None,
            saxs: None,
            contacts: None,
            restraint: None,
            linker: None,
            config,
        };
        engine.setup_features()?;
        Ok(engine)
    }

    /// Same scene, different seed.
    pub fn with_seed(mut config: SceneConfig, seed: u64) -> Result<Engine> {
        config.rng_seed = Some(seed);
        Engine::new(config)
    }

    fn resolve(&self, sel: &Selector) -> Result<BeadRef> {
        let body = self
            .scene
            .index(&sel.marker)
            .ok_or_else(|| Error::UnknownMarker(sel.marker.clone()))?;
        let bead = self
            .model(body)
            .find(sel.chain, sel.seq, sel.atom.as_deref())
            .ok_or_else(|| Error::Config(format!("selector {sel:?} matches no bead")))?;
        Ok((body, bead))
    }

    fn setup_features(&mut self) -> Result<()> {
        let features = self.config.features.clone();
        let seed = self.seed;

        for kd in &features.key_distances {
            let a = self.resolve(&kd.a)?;
            let b = self.resolve(&kd.b)?;
            self.key_distances.push((kd.clone(), a, b));
        }

        if let Some(c) = &features.clash {
            self.enabled[Feature::Clash.index()] = c.enabled;
            self.clash = Some(c.clone());
        }

        if let Some(e) = &features.electrostatics {
            self.enabled[Feature::Electrostatics.index()] = e.enabled;
            let pairs = match &e.pairs {
                Some(pairs) => pairs
                    .iter()
                    .map(|p| Ok((self.resolve(&p.a)?, self.resolve(&p.b)?, p.coupling)))
                    .collect::<Result<Vec<_>>>()?,
                None => {
                    let charged = |body: usize| -> Vec<usize> {
                        self.model(body)
                            .beads
                            .iter()
                            .enumerate()
                            .filter(|(_, b)| b.charge != 0.0)
                            .map(|(i, _)| i)
                            .collect()
                    };
                    let (ca, cb) = (charged(0), charged(1));
                    ca.iter()
                        .flat_map(|&i| cb.iter().map(move |&j| ((0, i), (1, j), 1.0)))
                        .collect()
                }
            };
            self.electrostatics = Some(pairs);
        }

        if let Some(p) = &features.proton {
            self.enabled[Feature::Proton.index()] = p.enabled;
            self.proton = Some(ProtonSetup {
                donor: self.resolve(&p.donor)?,
                proton: self.resolve(&p.proton)?,
                acceptor: self.resolve(&p.acceptor)?,
                params: ProtonParams {
                    rate: p.rate,
                    gate: p.gate,
                },
                window: p.hbond_window,
                bond_length: p.bond_length,
                state: ProtonState::with_rng(p.populations, stream(seed, "proton")),
            });
        }

        if let Some(r) = &features.reaction {
            self.enabled[Feature::Reaction.index()] = r.enabled;
            let ends = [self.resolve(&r.diene_ends[0])?, self.resolve(&r.diene_ends[1])?];
            let dienophile = [self.resolve(&r.dienophile[0])?, self.resolve(&r.dienophile[1])?];
            let plane = [
                self.resolve(&r.diene_plane[0])?,
                self.resolve(&r.diene_plane[1])?,
                self.resolve(&r.diene_plane[2])?,
            ];
            if ends[0].0 != ends[1].0 || dienophile[0].0 != dienophile[1].0 || ends[0].0 == dienophile[0].0 {
                return Err(Error::Config(
                    "diene and dienophile atoms must each sit on one body, on different bodies".into(),
                ));
            }
            self.reaction = Some(ReactionSetup {
                ends,
                dienophile,
                plane,
                params: ReactionParams {
                    d_start: r.d_start,
                    d_form: r.d_form,
                    latch: r.latch,
                },
                state: ReactionState::default(),
                lock: None,
                product: None,
            });
        }

        if let Some(p) = &features.pcs {
            self.enabled[Feature::Pcs.index()] = p.enabled;
            let metal = self.resolve(&p.metal)?;
            let probe = self.resolve(&p.probe)?;
            let frame = Pose::from_components(p.frame, [0.0; 3], 1e-3)?.rotation;
            self.pcs = Some(PcsSetup {
                body: metal.0,
                tensor: ChiTensor {
                    delta_chi_ax: p.delta_chi_ax,
                    delta_chi_rh: p.delta_chi_rh,
                    frame,
                    metal: self.model(metal.0).beads[metal.1].center,
                },
                probe,
                axis: linspace(p.grid.min, p.grid.max, p.grid.points),
                config: p.clone(),
                rng: stream(seed, "spectrum"),
            });
        }

        if let Some(s) = &features.saxs {
            self.enabled[Feature::Saxs.index()] = s.enabled;
            let q = linspace(s.q.min, s.q.max, s.q.points);
            let reference = match &s.reference {
                SaxsReferenceConfig::File(source) => {
                    source.text().and_then(parse_profile).and_then(|p| match p.sigma {
                        Some(_) => Ok(p),
                        None => Err(Error::Fit("reference profile needs a σ column".into())),
                    })
                }
                SaxsReferenceConfig::Synthetic { pose, a, b_rel } => Pose::from_config(pose).map(|pose_b| {
                    let mut poses = self.initial_poses();
                    if let Some(last) = poses.last_mut() {
                        *last = pose_b;
                    }
                    let (positions, ff) = self.scattering_beads(&poses);
                    let profile = saxs_debye(&positions, &ff, &q);
                    let b = b_rel * profile.intensity[0];
                    synth_reference(&profile, *a, b, &mut stream(seed, "saxs_reference"))
                }),
            };
            self.saxs = Some(
                reference
                    .map(|reference| SaxsSetup { q, reference })
                    .map_err(|e| e.to_string()),
            );
        }

        if let Some(c) = &features.contacts {
            self.enabled[Feature::Contacts.index()] = c.enabled;
            let set = c
                .source
                .text()
                .and_then(|text| load_contacts(text, c.thresholds, c.satisfaction_cutoff));
            self.contacts = Some(
                set.map(|set| ContactsSetup {
                    set,
                    style: ContactStyle {
                        d_sat: c.d_sat,
                        d_far: c.d_far,
                        w_min: c.w_min,
                        w_max: c.w_max,
                    },
                })
                .map_err(|e| e.to_string()),
            );
        }

        if let Some(r) = &features.restraint {
            self.enabled[Feature::Restraint.index()] = r.enabled;
            let a = self.resolve(&r.anchor_a)?;
            let b = self.resolve(&r.anchor_b)?;
            if a.0 == b.0 {
                return Err(Error::Config("restraint anchors must be on different bodies".into()));
            }
            let mut restraint = BindingRestraint::new(a.1, b.1, r.target_distance, r.rate, r.max_step);
            restraint.active = r.enabled;
            self.restraint = Some(RestraintSetup {
                body_a: a.0,
                body_b: b.0,
                restraint,
            });
        }

        if let Some(l) = &features.linker {
            self.enabled[Feature::Linker.index()] = l.enabled;
            let anchors = [self.resolve(&l.anchor_a)?, self.resolve(&l.anchor_b)?];
            let radius = l
                .bead_radius
                .unwrap_or_else(|| RadiusRule::default().radius(AminoAcidTable::standard().backbone_volume()));
            let excluded = (0..self.scene.bodies().len())
                .map(|body| {
                    let model = self.model(body);
                    let near: Vec<Vec3> = anchors
                        .iter()
                        .filter(|(b, _)| *b == body)
                        .map(|&(_, i)| model.beads[i].center)
                        .collect();
                    model
                        .beads
                        .iter()
                        .map(|bead| near.iter().any(|c| (bead.center - c).norm() < 2.0 * l.bond_length))
                        .collect()
                })
                .collect();
            let world = self.world_all();
            let [wa, wb] = anchors.map(|(b, i)| world[b][i]);
            self.linker = Some(LinkerSetup {
                anchors,
                chain: build_linker(l.beads, l.bond_length, &wa, &wb, radius)?,
                solver: SolverParams {
                    iterations: l.iterations,
                    damping: l.damping,
                    self_collision: l.self_collision,
                },
                wlc: WlcParams {
                    contour: l.contour_length.unwrap_or((l.beads + 1) as f64 * l.bond_length),
                    persistence: l.persistence_length,
                    kt: l.kt,
                },
                excluded,
            });
        }
        Ok(())
    }

    fn initial_poses(&self) -> Vec<Pose> {
        self.scene.bodies().iter().map(|b| b.pose).collect()
    }

    fn scattering_beads(&self, poses: &[Pose]) -> (Vec<Vec3>, Vec<f64>) {
        let mut positions = Vec::new();
        let mut ff = Vec::new();
        for (body, pose) in self.scene.bodies().iter().zip(poses) {
            positions.extend(world_positions(&body.model, pose));
            ff.extend(body.model.beads.iter().map(|b| b.electrons));
        }
        (positions, ff)
    }

    pub fn config(&self) -> &SceneConfig {
        &self.config
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn scene(&self) -> &SceneState {
        &self.scene
    }

    pub fn model(&self, body: usize) -> &BeadModel {
        &self.scene.bodies()[body].model
    }

    pub fn molecule(&self, body: usize) -> &Molecule {
        &self.molecules[body]
    }

    pub fn tick_count(&self) -> u64 {
        self.tick
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn is_enabled(&self, feature: Feature) -> bool {
        self.enabled[feature.index()]
    }

    pub fn is_configured(&self, feature: Feature) -> bool {
        match feature {
            Feature::Clash => self.clash.is_some(),
            Feature::Electrostatics => self.electrostatics.is_some(),
            Feature::Proton => self.proton.is_some(),
            Feature::Reaction => self.reaction.is_some(),
            Feature::Pcs => self.pcs.is_some(),
            Feature::Saxs => self.saxs.is_some(),
            Feature::Contacts => self.contacts.is_some(),
            Feature::Restraint => self.restraint.is_some(),
            Feature::Linker => self.linker.is_some(),
        }
    }

    pub fn set_pose(&mut self, marker: &str, pose: Pose) -> Result<()> {
        self.scene.set_pose(marker, pose)
    }

    pub fn mark_lost(&mut self, marker: &str) -> Result<()> {
        self.scene.mark_lost(marker)
    }

    /// Enable, disable or reset the features behind a verb.
    pub fn handle_command(&mut self, cmd: EngineCommand) -> Result<String> {
        let features: Vec<Feature> = cmd
            .verb
            .features()
            .iter()
            .copied()
            .filter(|&f| self.is_configured(f))
            .collect();
        if features.is_empty() {
            return Err(Error::Command(format!(
                "`{}` is not configured in this scene",
                cmd.verb.name()
            )));
        }
        for feature in features {
            match cmd.arg {
                Arg::On => self.set_enabled(feature, true),
                Arg::Off => self.set_enabled(feature, false),
                Arg::Reset => self.reset(feature),
            }
        }
        Ok(format!("ok: {cmd}"))
    }

    fn set_enabled(&mut self, feature: Feature, on: bool) {
        self.enabled[feature.index()] = on;
        if let (Feature::Restraint, Some(r)) = (feature, self.restraint.as_mut()) {
            r.restraint.active = on;
        }
    }

    fn reset(&mut self, feature: Feature) {
        match feature {
            Feature::Proton => {
                if let Some(p) = self.proton.as_mut() {
                    p.state.holder = Site::Donor;
                    p.state.hops = 0;
                }
            }
            Feature::Reaction => {
                if let Some(r) = self.reaction.as_mut() {
                    r.state = ReactionState::default();
                    r.lock = None;
                    r.product = None;
                }
            }
            Feature::Restraint => {
                if let Some(r) = self.restraint.as_mut() {
                    r.restraint.reset();
                }
            }
            Feature::Linker => {
                let world = self.world_all();
                if let Some(l) = self.linker.as_mut() {
                    let [wa, wb] = l.anchors.map(|(b, i)| world[b][i]);
                    if let Ok(chain) = build_linker(l.chain.len(), l.chain.bond_length, &wa, &wb, l.chain.bead_radius) {
                        l.chain = chain;
                    }
                }
            }
            Feature::Clash | Feature::Electrostatics | Feature::Pcs | Feature::Saxs | Feature::Contacts => {}
        }
    }

    /// Poses after the restraint offset and any reaction lock.
    pub fn effective_poses(&self) -> Vec<Pose> {
        let mut poses: Vec<Pose> = self.scene.bodies().iter().map(|b| b.pose).collect();
        if let Some(r) = &self.restraint {
            let pose = &mut poses[r.body_b];
            pose.translation = r.restraint.effective_translation(&pose.translation, &pose.rotation);
        }
        if let Some(r) = &self.reaction {
            if let (Some(lock), true) = (r.lock, self.is_enabled(Feature::Reaction)) {
                let (diene, dienophile) = (r.ends[0].0, r.dienophile[0].0);
                let zoom_a = self.model(diene).zoom;
                let zoom_b = self.model(dienophile).zoom;
                let frame = poses[diene].frame(zoom_a).compose(&lock);
                let pose = &mut poses[dienophile];
                pose.rotation = frame.rotation;
                pose.translation = frame.translation / zoom_b;
            }
        }
        poses
    }

    fn world_all(&self) -> Vec<Vec<Vec3>> {
        self.effective_poses()
            .iter()
            .zip(self.scene.bodies())
            .map(|(pose, body)| world_positions(&body.model, pose))
            .collect()
    }

    /// Advance one tick of `dt` seconds.
    pub fn tick(&mut self, dt: f64) -> FrameState {
        self.tick += 1;
        self.time += dt;
        let mut readouts = Readouts::default();
        let mut errors = Vec::new();
        let mut dashed = Vec::new();
        let mut lines = Vec::new();

        let mut world = self.world_all();

        if self.restraint.is_some() {
            self.step_restraint(&mut world, &mut readouts);
        }

        let mut linker_positions = None;
        if self.is_enabled(Feature::Linker) {
            linker_positions = self.step_linker(&world, &mut readouts);
        }

        let mut key_distances = Vec::new();
        for (kd, a, b) in &self.key_distances {
            let (pa, pb) = (world[a.0][a.1], world[b.0][b.1]);
            let d = key_distance(&pa, &pb);
            key_distances.push((kd.label.clone(), d));
            dashed.push(DashedLine {
                label: kd.label.clone(),
                from: pa,
                to: pb,
                distance: d,
                color: kd.color.clone(),
                points: dashed_line(&pa, &pb, kd.dashed_points),
            });
        }

        let n_bodies = world.len();
        let mut halos: Vec<Vec<f64>> = world.iter().map(|w| vec![0.0; w.len()]).collect();
        let mut clash_flags: Vec<Vec<bool>> = world.iter().map(|w| vec![false; w.len()]).collect();
        let mut haptic_pulse = false;
        if let (Some(cfg), true) = (&self.clash, self.is_enabled(Feature::Clash)) {
            if n_bodies == 2 {
                let report = detect_clashes(&world[0], &world[1], cfg.cutoff);
                let (ha, hb) = halo_opacities(&report, cfg.halo_opacity);
                halos = vec![ha, hb];
                haptic_pulse = report.any();
                let min = world[0]
                    .iter()
                    .flat_map(|p| world[1].iter().map(move |q| (p - q).norm()))
                    .reduce(f64::min);
                readouts.set(Scalar::ClashActive, if report.any() { 1.0 } else { 0.0 });
                readouts.set(Scalar::ClashCount, report.pairs.len() as f64);
                readouts.set_opt(Scalar::ClashMinDistance, min);
                clash_flags = vec![report.flags_a, report.flags_b];
            }
        }

        if let (Some(pairs), true) = (&self.electrostatics, self.is_enabled(Feature::Electrostatics)) {
            let charged: Vec<ChargedPair> = pairs
                .iter()
                .map(|&(a, b, k)| {
                    ChargedPair::new(
                        self.model(a.0).beads[a.1].charge,
                        self.model(b.0).beads[b.1].charge,
                        key_distance(&world[a.0][a.1], &world[b.0][b.1]),
                    )
                    .with_coupling(k)
                })
                .collect();
            match electrostatic_term(&charged) {
                Ok(score) => readouts.set(Scalar::Electrostatics, score),
                Err(e) => errors.push(FeatureError {
                    feature: Feature::Electrostatics,
                    message: e.to_string(),
                }),
            }
        }

        let mut proton_position = None;
        if self.is_enabled(Feature::Proton) {
            if let Some(p) = self.proton.as_mut() {
                let donor = world[p.donor.0][p.donor.1];
                let bonded = world[p.proton.0][p.proton.1];
                let acceptor = world[p.acceptor.0][p.acceptor.1];
                let here = p.state.proton_position(&donor, &bonded, &acceptor, p.bond_length);
                let receiver = *p.state.receiver(&donor, &acceptor);
                let d = key_distance(&here, &receiver);
                let hbond = hbond_candidate(&here, &receiver, p.window);
                readouts.set(Scalar::HbondShown, if hbond.is_some() { 1.0 } else { 0.0 });
                if let Some(hb) = hbond {
                    dashed.push(DashedLine {
                        label: "hbond".into(),
                        from: hb.from,
                        to: hb.to,
                        distance: hb.distance,
                        color: "yellow".into(),
                        points: hb.points,
                    });
                }
                proton_transfer_step(&mut p.state, d, dt, &p.params);
                proton_position = Some(p.state.proton_position(&donor, &bonded, &acceptor, p.bond_length));
                readouts.set(Scalar::ProtonHolder, p.state.holder.code());
                readouts.set(Scalar::ProtonDistance, d);
                readouts.set(Scalar::ProtonHops, p.state.hops as f64);
            }
        }

        let mut product = None;
        if self.is_enabled(Feature::Reaction) {
            let formed_now = if let Some(r) = self.reaction.as_mut() {
                let at = |x: BeadRef| world[x.0][x.1];
                let geometry = ReactionGeometry {
                    diene_ends: r.ends.map(at),
                    dienophile: r.dienophile.map(at),
                    diene_plane: r.plane.map(at),
                };
                let was_formed = r.state.formed;
                r.state = diels_alder_step(&r.state, &geometry, &r.params);
                for k in 0..2 {
                    lines.push(Line {
                        label: format!("new_bond_{}", k + 1),
                        from: geometry.diene_ends[k],
                        to: geometry.dienophile[k],
                        color: "white".into(),
                        width: 0.1,
                        opacity: r.state.bond_opacity(),
                    });
                }
                readouts.set(Scalar::ReactionProgress, r.state.progress);
                readouts.set(Scalar::ReactionFormed, if r.state.formed { 1.0 } else { 0.0 });
                readouts.set(Scalar::ReactionFace, r.state.face_sign.code());
                readouts.set(Scalar::ReactionD1, r.state.distances[0]);
                readouts.set(Scalar::ReactionD2, r.state.distances[1]);
                r.state.formed && !was_formed
            } else {
                false
            };
            if formed_now {
                self.form_product();
            }
            product = self.reaction.as_ref().and_then(|r| r.product.clone());
        }

        let mut spectrum = None;
        if self.is_enabled(Feature::Pcs) {
            let poses = self.effective_poses();
            if let Some(p) = self.pcs.as_mut() {
                let zoom = self.scene.bodies()[p.body].model.zoom;
                let probe = world[p.probe.0][p.probe.1];
                match polar_from_frame(&probe, &p.tensor, &poses[p.body], zoom) {
                    Ok(polar) => {
                        let shift = p.config.diamagnetic_shift + pcs(&polar, &p.tensor);
                        let width = pre_linewidth(polar.r, p.config.pre_constant, p.config.baseline_linewidth);
                        readouts.set(Scalar::PcsShift, shift);
                        readouts.set(Scalar::PcsLinewidth, width);
                        readouts.set(Scalar::PcsR, polar.r);
                        readouts.set(Scalar::PcsTheta, polar.theta);
                        readouts.set(Scalar::PcsPhi, polar.phi);
                        spectrum = Some(simulate_spectrum(
                            shift,
                            width,
                            p.config.field_mhz,
                            &p.axis,
                            p.config.noise_sigma,
                            &mut p.rng,
                        ));
                    }
                    Err(e) => errors.push(FeatureError {
                        feature: Feature::Pcs,
                        message: e.to_string(),
                    }),
                }
            }
        }

        let mut saxs = None;
        if self.is_enabled(Feature::Saxs) {
            match &self.saxs {
                Some(Ok(setup)) => {
                    let mut positions = Vec::new();
                    let mut ff = Vec::new();
                    for (body, w) in self.scene.bodies().iter().zip(&world) {
                        positions.extend_from_slice(w);
                        ff.extend(body.model.beads.iter().map(|b| b.electrons));
                    }
                    let calculated = saxs_debye(&positions, &ff, &setup.q);
                    match fit_saxs(&calculated, &setup.reference) {
                        Ok(fit) => {
                            readouts.set(Scalar::SaxsChi, fit.chi);
                            readouts.set(Scalar::SaxsScale, fit.scale);
                        }
                        Err(e) => errors.push(FeatureError {
                            feature: Feature::Saxs,
                            message: e.to_string(),
                        }),
                    }
                    saxs = Some(SaxsSeries {
                        calculated,
                        reference: setup.reference.clone(),
                    });
                }
                Some(Err(message)) => errors.push(FeatureError {
                    feature: Feature::Saxs,
                    message: message.clone(),
                }),
                None => {}
            }
        }

        if self.is_enabled(Feature::Contacts) && n_bodies == 2 {
            match &self.contacts {
                Some(Ok(setup)) => {
                    let endpoints = setup.set.endpoints(self.model(0), &world[0], self.model(1), &world[1]);
                    for (contact, ends) in setup.set.contacts.iter().zip(&endpoints) {
                        if let Some(ends) = ends {
                            let line = contact_geometry(contact, *ends, &setup.style);
                            lines.push(Line {
                                label: format!("contact {} {}", contact.res_a, contact.res_b),
                                from: line.from,
                                to: line.to,
                                color: line.color,
                                width: line.width,
                                opacity: 1.0,
                            });
                        }
                    }
                    let s = satisfaction(&setup.set, &endpoints);
                    readouts.set_opt(Scalar::ContactSatisfaction, s.fraction);
                    readouts.set(Scalar::ContactsResolved, s.distances.iter().flatten().count() as f64);
                }
                Some(Err(message)) => errors.push(FeatureError {
                    feature: Feature::Contacts,
                    message: message.clone(),
                }),
                None => {}
            }
        }

        let anchors: Vec<Option<usize>> = (0..n_bodies)
            .map(|body| {
                self.restraint.as_ref().and_then(|r| {
                    if body == r.body_a {
                        Some(r.restraint.anchor_a)
                    } else if body == r.body_b {
                        Some(r.restraint.anchor_b)
                    } else {
                        None
                    }
                })
            })
            .collect();
        let bodies = self
            .scene
            .bodies()
            .iter()
            .enumerate()
            .map(|(i, body)| BodyFrame {
                marker: body.marker.clone(),
                visible: body.visible,
                opacities: if self.restraint.is_some() {
                    anchor_opacity(body.model.len(), anchors[i], &clash_flags[i])
                } else {
                    body.model.beads.iter().map(|b| b.opacity).collect()
                },
                halos: std::mem::take(&mut halos[i]),
                positions: std::mem::take(&mut world[i]),
            })
            .collect();

        FrameState {
            tick: self.tick,
            time: self.time,
            bodies,
            dashed,
            lines,
            readouts,
            key_distances,
            haptic_pulse,
            proton_position,
            linker: linker_positions,
            product,
            spectrum,
            saxs,
            errors,
        }
    }

    fn step_restraint(&mut self, world: &mut [Vec<Vec3>], readouts: &mut Readouts) {
        let enabled = self.is_enabled(Feature::Restraint);
        let poses = self.effective_poses();
        let Some(r) = self.restraint.as_mut() else {
            return;
        };
        let zoom_b = self.scene.bodies()[r.body_b].model.zoom;
        let rotation_b = poses[r.body_b].rotation;
        r.restraint.active = enabled;
        let wa = world[r.body_a][r.restraint.anchor_a];
        let wb = world[r.body_b][r.restraint.anchor_b];
        let delta = r.restraint.apply(&wa, &wb, &rotation_b, zoom_b);
        let shift = rotation_b * delta * zoom_b;
        for p in world[r.body_b].iter_mut() {
            *p += shift;
        }
        if enabled {
            let wb = world[r.body_b][r.restraint.anchor_b];
            readouts.set(Scalar::RestraintDistance, key_distance(&wa, &wb));
            readouts.set(Scalar::RestraintOffset, r.restraint.offset.norm());
        }
    }

    fn step_linker(&mut self, world: &[Vec<Vec3>], readouts: &mut Readouts) -> Option<Vec<Vec3>> {
        let obstacles_for = |l: &LinkerSetup| -> Vec<Obstacle> {
            let mut obstacles = Vec::new();
            for (body, w) in world.iter().enumerate() {
                let model = &self.scene.bodies()[body].model;
                for (i, p) in w.iter().enumerate() {
                    if !l.excluded[body][i] {
                        obstacles.push(Obstacle {
                            center: *p,
                            radius: model.beads[i].radius,
                        });
                    }
                }
            }
            obstacles
        };
        let obstacles = obstacles_for(self.linker.as_ref()?);
        let l = self.linker.as_mut()?;
        let [wa, wb] = l.anchors.map(|(b, i)| world[b][i]);
        step_linker(&mut l.chain, &wa, &wb, &obstacles, &l.solver);
        let separation = key_distance(&wa, &wb);
        let (extension, _) = extension_check(separation, l.chain.len(), l.chain.bond_length);
        readouts.set(Scalar::LinkerSeparation, separation);
        readouts.set(Scalar::LinkerMaxResidual, l.chain.max_bond_residual(&wa, &wb));
        let overstretched = extension == Extension::Overstretched || separation >= l.wlc.contour;
        readouts.set(
            Scalar::LinkerExtension,
            if overstretched {
                Extension::Overstretched.code()
            } else {
                extension.code()
            },
        );
        readouts.set_opt(Scalar::LinkerForce, wlc_force(separation, &l.wlc).ok());
        readouts.set_opt(Scalar::LinkerFreeEnergy, wlc_free_energy(separation, &l.wlc).ok());
        readouts.set_opt(Scalar::LinkerEntropicCost, entropic_cost(separation, &l.wlc).ok());
        Some(l.chain.positions.clone())
    }

    fn form_product(&mut self) {
        let poses = self.effective_poses();
        let Some(r) = self.reaction.as_ref() else {
            return;
        };
        let (diene, dienophile) = (r.ends[0].0, r.dienophile[0].0);
        let frame_a = poses[diene].frame(self.model(diene).zoom);
        let frame_b = poses[dienophile].frame(self.model(dienophile).zoom);
        let lock = frame_a.inverse().compose(&frame_b);
        let topology = product_topology(
            &self.model(diene).bonds,
            [r.ends[0].1, r.ends[1].1],
            [r.dienophile[0].1, r.dienophile[1].1],
            r.state.face_sign,
        );
        let r = self.reaction.as_mut().expect("checked above");
        r.lock = Some(lock);
        r.product = Some(topology);
    }
}
