//! Host boundary: a handle-based engine registry, the WireFrame encodings and
//! a flat C ABI.

mod ffi;
mod registry;
pub mod wire;

pub use ffi::{
    error_code, msw_alloc, msw_copy_frame, msw_create, msw_dealloc, msw_destroy, msw_last_error, msw_push_command,
    msw_push_pose, msw_read, msw_tick_and_read, MSW_EARG, MSW_EBUFFER, MSW_ECOMMAND, MSW_ECONFIG, MSW_EHANDLE,
    MSW_EPANIC, MSW_EPOSE, MSW_OK,
};
pub use registry::Registry;
pub use wire::{decode, encode, Encoding};
