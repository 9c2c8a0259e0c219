//! C interface to `gaussmanin`.
//!
//! Every function returns a [`GmStatus`]. On failure a message is stored per
//! thread and can be read with [`gm_last_error_message`]. Strings handed out
//! by the library must be released with [`gm_string_free`], handles with
//! [`gm_singularity_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gaussmanin::brieskorn::LocalContext;
use gaussmanin::cli::{self, CliError, Command, RunConfig};
use gaussmanin::local::default_degree_bound;
use gaussmanin::series::MultiPoly;
use gaussmanin::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    NotSingular = 5,
    NonIsolated = 6,
    NotQuasiHomogeneous = 7,
    UnstableTruncation = 8,
    ComputationFailed = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GmCommand {
    Milnor = 0,
    Basis = 1,
    Tmatrix = 2,
    Connection = 3,
    Saturate = 4,
    Spectrum = 5,
    All = 6,
}

impl From<GmCommand> for Command {
    fn from(c: GmCommand) -> Self {
        match c {
            GmCommand::Milnor => Command::Milnor,
            GmCommand::Basis => Command::Basis,
            GmCommand::Tmatrix => Command::Tmatrix,
            GmCommand::Connection => Command::Connection,
            GmCommand::Saturate => Command::Saturate,
            GmCommand::Spectrum => Command::Spectrum,
            GmCommand::All => Command::All,
        }
    }
}

/// Opaque handle: a parsed polynomial with its certified Milnor algebra.
pub struct GmSingularity {
    f: MultiPoly,
    degree_bound: u32,
    ctx: LocalContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GmStatus {
    match e {
        Error::NotSingular(_) => GmStatus::NotSingular,
        Error::NonIsolated(_) => GmStatus::NonIsolated,
        Error::NotQuasiHomogeneous => GmStatus::NotQuasiHomogeneous,
        Error::UnstableTruncation(_) => GmStatus::UnstableTruncation,
        Error::InvalidArgument(_) => GmStatus::InvalidArgument,
        _ => GmStatus::ComputationFailed,
    }
}

fn cli_status(e: &CliError) -> GmStatus {
    match e {
        CliError::Usage(_) => GmStatus::InvalidArgument,
        CliError::Parse(_) => GmStatus::ParseError,
        CliError::Math(m) => status_of(m),
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guarded(body: impl FnOnce() -> Result<(), (GmStatus, String)>) -> GmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GmStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (GmStatus, String)> {
    if p.is_null() {
        return Err((GmStatus::NullPointer, "null string argument".into()));
    }
    // SAFETY: the caller promises a valid nul-terminated string.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| (GmStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

/// Parses `polynomial` and certifies its Milnor algebra up to degree
/// `prec_x` (0 selects the default bound). On success `*out` owns a handle.
///
/// # Safety
/// `polynomial` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gm_singularity_new(polynomial: *const c_char, prec_x: u32, out: *mut *mut GmSingularity) -> GmStatus {
    guarded(|| {
        if out.is_null() {
            return Err((GmStatus::NullPointer, "null output pointer".into()));
        }
        // SAFETY: forwarded caller contract.
        let text = unsafe { read_str(polynomial)? };
        let f = cli::parse_poly(text).map_err(|e| (GmStatus::ParseError, e.to_string()))?.to_poly();
        if f.nvars() == 0 {
            return Err((GmStatus::InvalidArgument, "the polynomial must involve at least one variable".into()));
        }
        let degree_bound = if prec_x == 0 { default_degree_bound(&f) } else { prec_x };
        let ctx = LocalContext::new(&f, degree_bound).map_err(|e| (status_of(&e), e.to_string()))?;
        let handle = Box::new(GmSingularity { f, degree_bound, ctx });
        // SAFETY: `out` checked non-null above.
        unsafe { *out = Box::into_raw(handle) };
        Ok(())
    })
}

/// Releases a handle; null is accepted.
///
/// # Safety
/// `handle` must come from [`gm_singularity_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gm_singularity_free(handle: *mut GmSingularity) {
    if !handle.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(handle) });
    }
}

unsafe fn handle_ref<'a>(handle: *const GmSingularity) -> Result<&'a GmSingularity, (GmStatus, String)> {
    // SAFETY: a non-null handle is live per the caller contract.
    unsafe { handle.as_ref() }.ok_or((GmStatus::NullPointer, "null handle".into()))
}

/// Writes the Milnor number to `*out_mu`.
///
/// # Safety
/// `handle` must be live and `out_mu` valid.
#[no_mangle]
pub unsafe extern "C" fn gm_singularity_milnor_number(handle: *const GmSingularity, out_mu: *mut usize) -> GmStatus {
    guarded(|| {
        // SAFETY: forwarded caller contract.
        let h = unsafe { handle_ref(handle)? };
        if out_mu.is_null() {
            return Err((GmStatus::NullPointer, "null output pointer".into()));
        }
        // SAFETY: checked non-null.
        unsafe { *out_mu = h.ctx.mu() };
        Ok(())
    })
}

/// Writes whether quasi-homogeneous weights exist.
///
/// # Safety
/// `handle` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gm_singularity_is_quasi_homogeneous(handle: *const GmSingularity, out: *mut bool) -> GmStatus {
    guarded(|| {
        // SAFETY: forwarded caller contract.
        let h = unsafe { handle_ref(handle)? };
        if out.is_null() {
            return Err((GmStatus::NullPointer, "null output pointer".into()));
        }
        // SAFETY: checked non-null.
        unsafe { *out = h.ctx.report().weights.is_some() };
        Ok(())
    })
}

/// Runs `command` and stores the JSON report in `*out_json`, to be released
/// with [`gm_string_free`]. Precisions below 2 are rejected.
///
/// # Safety
/// `handle` must be live and `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn gm_singularity_report_json(
    handle: *const GmSingularity,
    command: GmCommand,
    prec_s: i64,
    prec_t: i64,
    stability_check: bool,
    out_json: *mut *mut c_char,
) -> GmStatus {
    guarded(|| {
        // SAFETY: forwarded caller contract.
        let h = unsafe { handle_ref(handle)? };
        if out_json.is_null() {
            return Err((GmStatus::NullPointer, "null output pointer".into()));
        }
        let config = RunConfig { prec_s, prec_x: Some(h.degree_bound), prec_t, stability_check, ..RunConfig::default() };
        let report = cli::run(command.into(), &h.f, &config).map_err(|e| (cli_status(&e), e.to_string()))?;
        let json = CString::new(report.to_json()).expect("JSON has no nul bytes");
        // SAFETY: checked non-null.
        unsafe { *out_json = json.into_raw() };
        Ok(())
    })
}

/// Releases a string returned by this library; null is accepted.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gm_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string was created by `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn gm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
