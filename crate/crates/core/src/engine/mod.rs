//! Per-tick orchestration: poses in, [`FrameState`] out.

mod command;
mod frame;
mod readouts;
mod runtime;

pub use command::{Arg, EngineCommand, Verb};
pub use frame::{BodyFrame, DashedLine, FeatureError, FrameState, Line, SaxsSeries};
pub use readouts::{Feature, Readouts, Scalar};
pub use runtime::{stream_seed, BeadRef, Engine, DEFAULT_DT};
