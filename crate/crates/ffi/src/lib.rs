//! C ABI over the simulator core.
//!
//! Configs and finished runs are opaque handles created and destroyed
//! here; every fallible call returns a [`wsnsim_status`] and leaves a
//! human-readable explanation for [`wsnsim_last_error_message`]. Strings
//! returned by this library are NUL-terminated copies the caller must
//! release with [`wsnsim_string_free`]. All entry points catch panics, so
//! no unwind ever crosses the boundary.

#![allow(non_camel_case_types)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use wsnsim::{report, Protocol, SimConfig, SimError, SimulationRun};

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum wsnsim_status {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument was rejected (bad protocol value, bad parameter).
    InvalidArgument = 2,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 3,
    /// Config text could not be parsed.
    ParseError = 4,
    /// A file could not be read.
    IoError = 5,
    /// The simulation itself failed.
    SimulationError = 6,
    /// The caller's buffer cannot hold the result.
    BufferTooSmall = 7,
    /// An internal panic was caught at the boundary.
    Panic = 8,
}

/// Protocol selector for [`wsnsim_simulate`]; pass the numeric value.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum wsnsim_protocol {
    Leach = 0,
    Ffa = 1,
    Jfa = 2,
}

/// Per-round snapshot mirroring one row of the rounds CSV.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct wsnsim_round_stats {
    /// Round number, starting at 1.
    pub round: u32,
    /// Nodes alive after the round's data frame.
    pub alive: u32,
    /// Cluster heads elected this round; 0 means a direct-to-base round.
    pub head_count: u32,
    /// Optimizer hazard jumps this round.
    pub jumps: u32,
    /// Residual network energy after the round, joules.
    pub total_energy_j: f64,
    /// Energy dissipated during the round, joules.
    pub dissipated_j: f64,
}

/// Opaque simulation configuration handle.
pub struct wsnsim_config {
    inner: SimConfig,
}

/// Opaque handle to one finished simulation run.
pub struct wsnsim_run {
    inner: SimulationRun,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).ok();
    });
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn status_for(error: &SimError) -> wsnsim_status {
    match error {
        SimError::ConfigParse { .. } => wsnsim_status::ParseError,
        SimError::Io(_) => wsnsim_status::IoError,
        SimError::InvalidParameter { .. } => wsnsim_status::InvalidArgument,
        _ => wsnsim_status::SimulationError,
    }
}

fn fail(error: &SimError) -> wsnsim_status {
    set_last_error(error.to_string());
    status_for(error)
}

/// Run `body` with panic isolation; a caught panic reports
/// [`wsnsim_status::Panic`].
fn guarded(body: impl FnOnce() -> wsnsim_status) -> wsnsim_status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            wsnsim_status::Panic
        }
    }
}

unsafe fn required_str<'a>(
    pointer: *const c_char,
    status: &mut wsnsim_status,
) -> Option<&'a str> {
    if pointer.is_null() {
        set_last_error("required string argument is NULL".into());
        *status = wsnsim_status::NullPointer;
        return None;
    }
    match unsafe { CStr::from_ptr(pointer) }.to_str() {
        Ok(text) => Some(text),
        Err(_) => {
            set_last_error("string argument is not valid UTF-8".into());
            *status = wsnsim_status::InvalidUtf8;
            None
        }
    }
}

fn leak_string(text: String) -> *mut c_char {
    match CString::new(text.replace('\0', " ")) {
        Ok(owned) => owned.into_raw(),
        Err(_) => ptr::null_mut(),
    }
}

/// Explanation of the most recent failure on this thread, or NULL when the
/// last call succeeded. Free with [`wsnsim_string_free`].
#[no_mangle]
pub extern "C" fn wsnsim_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(message) => leak_string(message.to_string_lossy().into_owned()),
        None => ptr::null_mut(),
    })
}

/// New configuration holding every default. Free with
/// [`wsnsim_config_free`]. NULL only on internal failure.
#[no_mangle]
pub extern "C" fn wsnsim_config_default() -> *mut wsnsim_config {
    clear_last_error();
    match catch_unwind(|| SimConfig::default()) {
        Ok(inner) => Box::into_raw(Box::new(wsnsim_config { inner })),
        Err(_) => {
            set_last_error("internal panic".into());
            ptr::null_mut()
        }
    }
}

/// Parse `key = value` config text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_config_from_text(
    text: *const c_char,
    out: *mut *mut wsnsim_config,
) -> wsnsim_status {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is NULL".into());
            return wsnsim_status::NullPointer;
        }
        let mut status = wsnsim_status::Ok;
        let Some(text) = (unsafe { required_str(text, &mut status) }) else {
            return status;
        };
        match wsnsim::parse_config(text).and_then(|config| config.validate().map(|()| config)) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(wsnsim_config { inner })) };
                wsnsim_status::Ok
            }
            Err(error) => fail(&error),
        }
    })
}

/// Read and parse a config file into a new handle stored in `*out`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_config_from_file(
    path: *const c_char,
    out: *mut *mut wsnsim_config,
) -> wsnsim_status {
    guarded(|| {
        clear_last_error();
        if out.is_null() {
            set_last_error("out pointer is NULL".into());
            return wsnsim_status::NullPointer;
        }
        let mut status = wsnsim_status::Ok;
        let Some(path) = (unsafe { required_str(path, &mut status) }) else {
            return status;
        };
        match SimConfig::from_file(std::path::Path::new(path))
            .and_then(|config| config.validate().map(|()| config))
        {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(wsnsim_config { inner })) };
                wsnsim_status::Ok
            }
            Err(error) => fail(&error),
        }
    })
}

/// Canonical `key = value` rendering of a config; parsing it back yields
/// the same configuration. Free with [`wsnsim_string_free`].
///
/// # Safety
/// `config` must be a live handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_config_dump(config: *const wsnsim_config) -> *mut c_char {
    clear_last_error();
    if config.is_null() {
        set_last_error("config handle is NULL".into());
        return ptr::null_mut();
    }
    match catch_unwind(AssertUnwindSafe(|| unsafe { (*config).inner.dump() })) {
        Ok(text) => leak_string(text),
        Err(_) => {
            set_last_error("internal panic".into());
            ptr::null_mut()
        }
    }
}

/// Release a config handle. NULL is ignored.
///
/// # Safety
/// `config` must be a live handle from this library or NULL; it must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_config_free(config: *mut wsnsim_config) {
    if !config.is_null() {
        drop(unsafe { Box::from_raw(config) });
    }
}

/// Simulate one full network lifetime and store the run in `*out`.
/// `protocol` takes a [`wsnsim_protocol`] value.
///
/// # Safety
/// `config` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_simulate(
    config: *const wsnsim_config,
    protocol: u32,
    seed: u64,
    out: *mut *mut wsnsim_run,
) -> wsnsim_status {
    guarded(|| {
        clear_last_error();
        if config.is_null() || out.is_null() {
            set_last_error("config or out pointer is NULL".into());
            return wsnsim_status::NullPointer;
        }
        let protocol = match protocol {
            0 => Protocol::Leach,
            1 => Protocol::Ffa,
            2 => Protocol::Jfa,
            other => {
                set_last_error(format!("unknown protocol value {other}"));
                return wsnsim_status::InvalidArgument;
            }
        };
        match wsnsim::simulate(unsafe { &(*config).inner }, protocol, seed) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(wsnsim_run { inner })) };
                wsnsim_status::Ok
            }
            Err(error) => fail(&error),
        }
    })
}

/// Lifetime milestones of a run: rounds until the first, half, and last
/// node death (0 = not reached within the round budget).
///
/// # Safety
/// `run` must be a live handle; each out pointer must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_run_lifetime(
    run: *const wsnsim_run,
    fnd: *mut u32,
    hnd: *mut u32,
    lnd: *mut u32,
) -> wsnsim_status {
    guarded(|| {
        clear_last_error();
        if run.is_null() {
            set_last_error("run handle is NULL".into());
            return wsnsim_status::NullPointer;
        }
        let summary = unsafe { (*run).inner.summary };
        unsafe {
            if !fnd.is_null() {
                *fnd = summary.fnd;
            }
            if !hnd.is_null() {
                *hnd = summary.hnd;
            }
            if !lnd.is_null() {
                *lnd = summary.lnd;
            }
        }
        wsnsim_status::Ok
    })
}

/// Number of rounds the run played; 0 for a NULL handle.
///
/// # Safety
/// `run` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_run_round_count(run: *const wsnsim_run) -> u32 {
    if run.is_null() {
        return 0;
    }
    unsafe { (*run).inner.rounds.len() as u32 }
}

/// Copy round `index` (0-based) into `*out`.
///
/// # Safety
/// `run` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_run_round(
    run: *const wsnsim_run,
    index: u32,
    out: *mut wsnsim_round_stats,
) -> wsnsim_status {
    guarded(|| {
        clear_last_error();
        if run.is_null() || out.is_null() {
            set_last_error("run or out pointer is NULL".into());
            return wsnsim_status::NullPointer;
        }
        let rounds = unsafe { &(*run).inner.rounds };
        let Some(stats) = rounds.get(index as usize) else {
            set_last_error(format!("round index {index} out of range ({})", rounds.len()));
            return wsnsim_status::InvalidArgument;
        };
        unsafe {
            *out = wsnsim_round_stats {
                round: stats.round,
                alive: stats.alive as u32,
                head_count: stats.head_ids.len() as u32,
                jumps: stats.jumps,
                total_energy_j: stats.total_energy_j,
                dissipated_j: stats.dissipated_j(),
            };
        }
        wsnsim_status::Ok
    })
}

/// Copy the head node ids of round `index` (0-based, election order) into
/// `buffer`. `*written` receives the head count even when the buffer is
/// too small, so a NULL buffer with capacity 0 sizes the allocation.
///
/// # Safety
/// `run` must be a live handle, `written` a valid pointer, and `buffer`
/// valid for `capacity` writes (or NULL when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn wsnsim_run_round_heads(
    run: *const wsnsim_run,
    index: u32,
    buffer: *mut u32,
    capacity: usize,
    written: *mut usize,
) -> wsnsim_status {
    guarded(|| {
        clear_last_error();
        if run.is_null() || written.is_null() || (buffer.is_null() && capacity > 0) {
            set_last_error("run, written, or buffer pointer is NULL".into());
            return wsnsim_status::NullPointer;
        }
        let rounds = unsafe { &(*run).inner.rounds };
        let Some(stats) = rounds.get(index as usize) else {
            set_last_error(format!("round index {index} out of range ({})", rounds.len()));
            return wsnsim_status::InvalidArgument;
        };
        unsafe { *written = stats.head_ids.len() };
        if stats.head_ids.len() > capacity {
            set_last_error(format!(
                "buffer holds {capacity} ids but the round has {} heads",
                stats.head_ids.len()
            ));
            return wsnsim_status::BufferTooSmall;
        }
        for (slot, head) in stats.head_ids.iter().enumerate() {
            unsafe { *buffer.add(slot) = head.0 as u32 };
        }
        wsnsim_status::Ok
    })
}

/// Per-round CSV table of a run, identical to the CLI's `rounds_*.csv`.
/// Free with [`wsnsim_string_free`].
///
/// # Safety
/// `run` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_run_rounds_csv(run: *const wsnsim_run) -> *mut c_char {
    clear_last_error();
    if run.is_null() {
        set_last_error("run handle is NULL".into());
        return ptr::null_mut();
    }
    match catch_unwind(AssertUnwindSafe(|| report::round_csv(unsafe { &(*run).inner }))) {
        Ok(text) => leak_string(text),
        Err(_) => {
            set_last_error("internal panic".into());
            ptr::null_mut()
        }
    }
}

/// One-row lifetime summary CSV of a run, identical to the CLI's
/// `summary_*.csv`. Free with [`wsnsim_string_free`].
///
/// # Safety
/// `run` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_run_summary_csv(run: *const wsnsim_run) -> *mut c_char {
    clear_last_error();
    if run.is_null() {
        set_last_error("run handle is NULL".into());
        return ptr::null_mut();
    }
    match catch_unwind(AssertUnwindSafe(|| {
        report::summary_csv(std::slice::from_ref(unsafe { &(*run).inner }))
    })) {
        Ok(text) => leak_string(text),
        Err(_) => {
            set_last_error("internal panic".into());
            ptr::null_mut()
        }
    }
}

/// Release a run handle. NULL is ignored.
///
/// # Safety
/// `run` must be a live handle from this library or NULL; it must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_run_free(run: *mut wsnsim_run) {
    if !run.is_null() {
        drop(unsafe { Box::from_raw(run) });
    }
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `text` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wsnsim_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}
