//! C ABI over the fiberfield toolkit.
//!
//! Every entry point returns an [`FfStatus`]; on failure the message is kept
//! per thread and read with [`ff_last_error_message`]. Strings handed out by
//! the library are freed with [`ff_string_free`], reports with
//! [`ff_report_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fiberfield::arith::parse_rational;
use fiberfield::cli::{self, CliError, Command, RunConfig};
use fiberfield::curves::meromorphic_h2;
use fiberfield::liealg::{witt_h2_stabilized, Coefficients};

/// Status codes; the nonzero ones match the command-line exit codes where
/// they overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfStatus {
    Ok = 0,
    NullArgument = 1,
    Config = 2,
    Budget = 3,
    Internal = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// A finished report, owned by the caller until [`ff_report_free`].
pub struct FfReport {
    json: CString,
    payload: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: FfStatus, msg: impl Into<String>) -> FfStatus {
    set_error(msg);
    status
}

fn from_cli(e: CliError) -> FfStatus {
    let status = match e {
        CliError::Config(_) => FfStatus::Config,
        CliError::Budget(_) => FfStatus::Budget,
        CliError::Internal(_) => FfStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `body` with the error slot cleared and panics converted to a status.
fn guard(body: impl FnOnce() -> FfStatus) -> FfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => fail(FfStatus::Panic, "panic inside fiberfield"),
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, FfStatus> {
    if p.is_null() {
        return Err(fail(FfStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(FfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_c(s: String) -> CString {
    CString::new(s).expect("JSON output has no interior NUL")
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ff_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ff_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Runs a subcommand (`der-solve`, `cohomology` or `example`) on a JSON
/// config. `budget` of 0 keeps the config's own budget.
///
/// # Safety
/// `command` and `config_json` must be NUL-terminated strings; `out` must be
/// a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ff_run(
    command: *const c_char,
    config_json: *const c_char,
    budget: u64,
    out: *mut *mut FfReport,
) -> FfStatus {
    guard(|| {
        if out.is_null() {
            return fail(FfStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let command = match read_str(command, "command") {
            Ok(c) => c,
            Err(s) => return s,
        };
        let text = match read_str(config_json, "config_json") {
            Ok(c) => c,
            Err(s) => return s,
        };
        let command = match command {
            "der-solve" => Command::DerSolve,
            "cohomology" => Command::Cohomology,
            "example" => Command::Example,
            other => return fail(FfStatus::Config, format!("unknown command `{other}`")),
        };
        let config = match RunConfig::from_json(text) {
            Ok(c) => c,
            Err(e) => return from_cli(CliError::config(e)),
        };
        match cli::run(command, config, (budget > 0).then_some(budget)) {
            Ok(report) => {
                let payload = serde_json::to_string(&report.payload()).expect("report serializes");
                *out = Box::into_raw(Box::new(FfReport { json: to_c(report.to_json()), payload: to_c(payload) }));
                FfStatus::Ok
            }
            Err(e) => from_cli(e),
        }
    })
}

/// Full report JSON, borrowed from the report.
///
/// # Safety
/// `report` must come from [`ff_run`] and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn ff_report_json(report: *const FfReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Report JSON without timing, identical across runs of the same config.
///
/// # Safety
/// `report` must come from [`ff_run`] and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn ff_report_payload(report: *const FfReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.payload.as_ptr())
}

/// # Safety
/// `report` must come from [`ff_run`] or be null; it must not be used again.
#[no_mangle]
pub unsafe extern "C" fn ff_report_free(report: *mut FfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Runs a named example with default settings and returns the report JSON,
/// to be released with [`ff_string_free`].
///
/// # Safety
/// `name` must be a NUL-terminated string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_run_example(name: *const c_char, out_json: *mut *mut c_char) -> FfStatus {
    guard(|| {
        if out_json.is_null() {
            return fail(FfStatus::NullArgument, "out_json is null");
        }
        *out_json = ptr::null_mut();
        let name = match read_str(name, "name") {
            Ok(n) => n,
            Err(s) => return s,
        };
        let config = RunConfig { example: Some(name.to_string()), ..RunConfig::default() };
        match cli::run(Command::Example, config, None) {
            Ok(report) => {
                *out_json = to_c(report.to_json()).into_raw();
                FfStatus::Ok
            }
            Err(e) => from_cli(e),
        }
    })
}

/// # Safety
/// `s` must come from this library or be null; it must not be used again.
#[no_mangle]
pub unsafe extern "C" fn ff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `dim H²` of the Witt algebra at `weight`, stabilized over windows
/// `window` and `window + 1`. `adjoint` selects adjoint coefficients.
/// Writes `-1` to `out_dim` when the two windows disagree.
///
/// # Safety
/// `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ff_witt_h2(window: i64, weight: i64, adjoint: bool, out_dim: *mut i64) -> FfStatus {
    guard(|| {
        if out_dim.is_null() {
            return fail(FfStatus::NullArgument, "out_dim is null");
        }
        if window < 1 {
            return fail(FfStatus::Config, "window must be at least 1");
        }
        let coeffs = if adjoint { Coefficients::Adjoint } else { Coefficients::Trivial };
        match witt_h2_stabilized(&[window, window + 1], weight, coeffs) {
            Ok(r) => {
                *out_dim = r.value.map_or(-1, |v| v as i64);
                FfStatus::Ok
            }
            Err(e) => from_cli(e.into()),
        }
    })
}

/// `dim H²` of vector fields on the line minus `points` (rational strings
/// such as `"1/2"`) and infinity, at the default truncations. Writes `-1`
/// when the truncations disagree.
///
/// # Safety
/// `points` must hold `n_points` NUL-terminated strings; `out_dim` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ff_punctured_h2(points: *const *const c_char, n_points: usize, out_dim: *mut i64) -> FfStatus {
    guard(|| {
        if out_dim.is_null() || (points.is_null() && n_points > 0) {
            return fail(FfStatus::NullArgument, "null argument");
        }
        let mut pts = Vec::with_capacity(n_points);
        for i in 0..n_points {
            let text = match read_str(*points.add(i), "point") {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_rational(text) {
                Ok(p) => pts.push(p),
                Err(e) => return from_cli(CliError::config(e)),
            }
        }
        match meromorphic_h2(&pts, &fiberfield::curves::DEFAULT_TRUNCATIONS) {
            Ok(r) => {
                *out_dim = r.dim_h2.map_or(-1, |v| v as i64);
                FfStatus::Ok
            }
            Err(e @ fiberfield::Error::CoincidentPoints { .. }) => from_cli(CliError::config(e)),
            Err(e) => from_cli(e.into()),
        }
    })
}
