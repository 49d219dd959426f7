use std::collections::BTreeMap;

use super::wire::{encode, Encoding};
use crate::engine::{Engine, EngineCommand, FrameState};
use crate::error::{Error, Result};
use crate::molio::SceneConfig;
use crate::scene::Pose;

/// Same tolerance as trajectory files.
const POSE_TOLERANCE: f64 = 1e-3;

struct Slot {
    engine: Engine,
    last: FrameState,
}

/// Handle table behind the flat interface. Handles start at 1 and are never
/// reused, so a stale handle can't reach a newer engine.
#[derive(Default)]
pub struct Registry {
    slots: BTreeMap<u32, Slot>,
    next: u32,
}

impl std::fmt::Debug for Registry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Registry")
            .field("handles", &self.slots.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl Registry {
    pub const fn new() -> Self {
        Self {
            slots: BTreeMap::new(),
            next: 0,
        }
    }

    /// Scene JSON with every source inlined.
    pub fn create(&mut self, scene_json: &[u8]) -> Result<u32> {
        let config = SceneConfig::from_json_bytes(scene_json)?;
        self.create_from_config(config)
    }

    pub fn create_from_config(&mut self, config: SceneConfig) -> Result<u32> {
        let engine = Engine::new(config)?;
        self.next = self
            .next
            .checked_add(1)
            .ok_or_else(|| Error::Config("engine handles exhausted".into()))?;
        self.slots.insert(
            self.next,
            Slot {
                engine,
                last: FrameState::default(),
            },
        );
        Ok(self.next)
    }

    pub fn destroy(&mut self, handle: u32) -> Result<()> {
        self.slots
            .remove(&handle)
            .map(|_| ())
            .ok_or(Error::InvalidHandle(handle))
    }

    fn slot(&mut self, handle: u32) -> Result<&mut Slot> {
        self.slots.get_mut(&handle).ok_or(Error::InvalidHandle(handle))
    }

    pub fn engine(&self, handle: u32) -> Result<&Engine> {
        self.slots
            .get(&handle)
            .map(|s| &s.engine)
            .ok_or(Error::InvalidHandle(handle))
    }

    /// `pose` is (qw, qx, qy, qz, tx, ty, tz), translation in display units.
    pub fn push_pose(&mut self, handle: u32, marker: &str, pose: [f64; 7], visible: bool) -> Result<()> {
        let slot = self.slot(handle)?;
        if visible {
            let [qw, qx, qy, qz, tx, ty, tz] = pose;
            let pose = Pose::from_components([qw, qx, qy, qz], [tx, ty, tz], POSE_TOLERANCE)?;
            slot.engine.set_pose(marker, pose)
        } else {
            slot.engine.mark_lost(marker)
        }
    }

    pub fn push_command(&mut self, handle: u32, verb: &str, arg: &str) -> Result<String> {
        let command = EngineCommand::parse(verb, arg)?;
        self.slot(handle)?.engine.handle_command(command)
    }

    pub fn tick(&mut self, handle: u32, dt: f64) -> Result<&FrameState> {
        if !(dt.is_finite() && dt >= 0.0) {
            return Err(Error::Config(format!("tick dt must be finite and >= 0, got {dt}")));
        }
        let slot = self.slot(handle)?;
        slot.last = slot.engine.tick(dt);
        Ok(&slot.last)
    }

    pub fn tick_and_read(&mut self, handle: u32, dt: f64, encoding: Encoding) -> Result<Vec<u8>> {
        Ok(encode(self.tick(handle, dt)?, encoding))
    }

    /// The most recent frame, or the empty frame before the first tick.
    pub fn read(&self, handle: u32, encoding: Encoding) -> Result<Vec<u8>> {
        let slot = self.slots.get(&handle).ok_or(Error::InvalidHandle(handle))?;
        Ok(encode(&slot.last, encoding))
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}
