//! C ABI over a process-wide [`Registry`].
//!
//! Every function returns a status: `>= 0` on success (a handle or a byte
//! length where noted) and one of the negative `MSW_E*` codes otherwise. The
//! message of the last failure is available from [`msw_last_error`]. Nothing
//! here panics across the boundary or calls back into the host.
//!
//! Frames are pulled in two steps: `msw_tick_and_read` returns the encoded
//! length and keeps the bytes; `msw_copy_frame` copies them into a host
//! buffer. In a linear-memory host, allocate that buffer with `msw_alloc`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Mutex, MutexGuard};

use super::registry::Registry;
use super::wire::Encoding;
use crate::error::Error;

pub const MSW_OK: i64 = 0;
pub const MSW_EHANDLE: i64 = -1;
pub const MSW_ECONFIG: i64 = -2;
pub const MSW_ECOMMAND: i64 = -3;
pub const MSW_EPOSE: i64 = -4;
pub const MSW_EARG: i64 = -5;
pub const MSW_EBUFFER: i64 = -6;
pub const MSW_EPANIC: i64 = -7;

struct State {
    registry: Registry,
    frames: BTreeMap<u32, Vec<u8>>,
    last_error: String,
}

static STATE: Mutex<State> = Mutex::new(State {
    registry: Registry::new(),
    frames: BTreeMap::new(),
    last_error: String::new(),
});

fn state() -> MutexGuard<'static, State> {
    STATE.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

/// Status code for a library error.
pub fn error_code(error: &Error) -> i64 {
    match error {
        Error::InvalidHandle(_) => MSW_EHANDLE,
        Error::Command(_) => MSW_ECOMMAND,
        Error::UnknownMarker(_) => MSW_EPOSE,
        Error::Config(msg) if msg.contains("quaternion") || msg.contains("translation") => MSW_EPOSE,
        Error::Wire(_) => MSW_EBUFFER,
        _ => MSW_ECONFIG,
    }
}

fn guarded(f: impl FnOnce(&mut State) -> Result<i64, (i64, String)>) -> i64 {
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        let mut st = state();
        let result = f(&mut st);
        if let Err((_, message)) = &result {
            st.last_error.clone_from(message);
        }
        result
    }));
    match outcome {
        Ok(Ok(code)) => code,
        Ok(Err((code, _))) => code,
        Err(_) => {
            state().last_error = "internal panic".into();
            MSW_EPANIC
        }
    }
}

fn lib(e: Error) -> (i64, String) {
    (error_code(&e), e.to_string())
}

fn arg(message: &str) -> (i64, String) {
    (MSW_EARG, message.to_string())
}

/// # Safety
/// `ptr` must be null or valid for reads of `len` bytes.
unsafe fn bytes<'a>(ptr: *const u8, len: usize) -> Result<&'a [u8], (i64, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(arg("null pointer"));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// # Safety
/// As for [`bytes`].
unsafe fn text<'a>(ptr: *const u8, len: usize) -> Result<&'a str, (i64, String)> {
    std::str::from_utf8(bytes(ptr, len)?).map_err(|_| arg("string is not UTF-8"))
}

/// Create an engine from scene JSON. Returns the handle.
///
/// # Safety
/// `scene` must be valid for reads of `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn msw_create(scene: *const u8, len: usize) -> i64 {
    guarded(|st| {
        let json = bytes(scene, len)?;
        st.registry.create(json).map(i64::from).map_err(lib)
    })
}

#[no_mangle]
pub extern "C" fn msw_destroy(handle: u32) -> i64 {
    guarded(|st| {
        st.frames.remove(&handle);
        st.registry.destroy(handle).map(|_| MSW_OK).map_err(lib)
    })
}

/// `pose` points at 7 doubles: qw, qx, qy, qz, tx, ty, tz.
///
/// # Safety
/// `marker` must be valid for `marker_len` bytes, `pose` for 7 doubles.
#[no_mangle]
pub unsafe extern "C" fn msw_push_pose(
    handle: u32,
    marker: *const u8,
    marker_len: usize,
    pose: *const f64,
    visible: i32,
) -> i64 {
    guarded(|st| {
        let marker = text(marker, marker_len)?;
        if pose.is_null() {
            return Err(arg("null pose pointer"));
        }
        let mut values = [0.0; 7];
        values.copy_from_slice(std::slice::from_raw_parts(pose, 7));
        st.registry
            .push_pose(handle, marker, values, visible != 0)
            .map(|_| MSW_OK)
            .map_err(lib)
    })
}

/// # Safety
/// `verb` and `arg` must be valid for their lengths.
#[no_mangle]
pub unsafe extern "C" fn msw_push_command(
    handle: u32,
    verb: *const u8,
    verb_len: usize,
    arg: *const u8,
    arg_len: usize,
) -> i64 {
    guarded(|st| {
        let verb = text(verb, verb_len)?;
        let arg = text(arg, arg_len)?;
        st.registry.push_command(handle, verb, arg).map(|_| MSW_OK).map_err(lib)
    })
}

/// Advance one tick and encode the frame (0 = binary, 1 = JSON). Returns the
/// encoded length.
#[no_mangle]
pub extern "C" fn msw_tick_and_read(handle: u32, dt: f64, encoding: u32) -> i64 {
    guarded(|st| {
        let encoding = Encoding::from_code(encoding).ok_or_else(|| arg("unknown encoding"))?;
        let frame = st.registry.tick_and_read(handle, dt, encoding).map_err(lib)?;
        let len = frame.len() as i64;
        st.frames.insert(handle, frame);
        Ok(len)
    })
}

/// Encode the latest frame (the empty frame before any tick) without
/// ticking. Returns the encoded length.
#[no_mangle]
pub extern "C" fn msw_read(handle: u32, encoding: u32) -> i64 {
    guarded(|st| {
        let encoding = Encoding::from_code(encoding).ok_or_else(|| arg("unknown encoding"))?;
        let frame = st.registry.read(handle, encoding).map_err(lib)?;
        let len = frame.len() as i64;
        st.frames.insert(handle, frame);
        Ok(len)
    })
}

/// Copy the bytes produced by the last read into `out`. Returns the number of
/// bytes copied, or `MSW_EBUFFER` when `cap` is too small.
///
/// # Safety
/// `out` must be valid for writes of `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn msw_copy_frame(handle: u32, out: *mut u8, cap: usize) -> i64 {
    guarded(|st| {
        st.registry.engine(handle).map_err(lib)?;
        let frame = st
            .frames
            .get(&handle)
            .ok_or_else(|| (MSW_EBUFFER, "no frame has been read yet".to_string()))?;
        if frame.len() > cap {
            return Err((
                MSW_EBUFFER,
                format!("frame needs {} bytes, buffer has {cap}", frame.len()),
            ));
        }
        if !frame.is_empty() {
            if out.is_null() {
                return Err(arg("null output buffer"));
            }
            std::ptr::copy_nonoverlapping(frame.as_ptr(), out, frame.len());
        }
        Ok(frame.len() as i64)
    })
}

/// Copy the last error message (UTF-8, not NUL-terminated). Returns the
/// message length; copies nothing if `cap` is too small.
///
/// # Safety
/// `out` must be valid for writes of `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn msw_last_error(out: *mut u8, cap: usize) -> i64 {
    let st = state();
    let msg = st.last_error.as_bytes();
    if !out.is_null() && msg.len() <= cap {
        std::ptr::copy_nonoverlapping(msg.as_ptr(), out, msg.len());
    }
    msg.len() as i64
}

/// Host-side buffer for linear-memory callers.
#[no_mangle]
pub extern "C" fn msw_alloc(len: usize) -> *mut u8 {
    let mut buf = Vec::<u8>::with_capacity(len);
    let ptr = buf.as_mut_ptr();
    std::mem::forget(buf);
    ptr
}

/// # Safety
/// `ptr` and `len` must come from one [`msw_alloc`] call, freed once.
#[no_mangle]
pub unsafe extern "C" fn msw_dealloc(ptr: *mut u8, len: usize) {
    if !ptr.is_null() {
        drop(Vec::from_raw_parts(ptr, 0, len));
    }
}
