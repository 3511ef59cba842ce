//! C ABI over the `multigraded` CLI layer.
//!
//! Problems are opaque handles; every command returns a status code and
//! hands back its report as a JSON string owned by the caller, to be
//! released with [`mg_string_free`]. The message of the last failing call
//! on the current thread is available from [`mg_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multigraded::cli::{self, Kind, ProblemFile, Report, Theory, Which};
use multigraded::Error;

/// Status codes. `MG_STATUS_OK` through `MG_STATUS_INVARIANT` mirror the
/// command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgStatus {
    Ok = 0,
    StructureFails = 1,
    InvalidInput = 2,
    Invariant = 3,
    NullPointer = 4,
    Utf8 = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgKind {
    Assoc = 0,
    Lie = 1,
    Bimodule = 2,
    Liemodule = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgWhich {
    Delta = 0,
    Wedge = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgTheory {
    Hochschild = 0,
    Chevalley = 1,
    Adjoint = 2,
}

/// A parsed and validated problem file.
pub struct MgProblem {
    file: ProblemFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(code: i32) -> MgStatus {
    match code {
        0 => MgStatus::Ok,
        1 => MgStatus::StructureFails,
        3 => MgStatus::Invariant,
        _ => MgStatus::InvalidInput,
    }
}

fn fail(status: MgStatus, msg: &str) -> MgStatus {
    set_error(msg);
    status
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MgStatus> {
    if s.is_null() {
        return Err(fail(MgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(MgStatus::Utf8, "argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) {
    let c = CString::new(s.replace('\0', " ")).expect("no interior nul");
    *out = c.into_raw();
}

fn guarded(f: impl FnOnce() -> MgStatus) -> MgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(MgStatus::Panic, "internal panic"),
    }
}

/// Runs a command and stores its JSON report in `*out`. A report is written
/// also when the structure fails; on errors `*out` is left null.
unsafe fn run_command(
    problem: *const MgProblem,
    out: *mut *mut c_char,
    f: impl FnOnce(&ProblemFile) -> Result<Report, Error>,
) -> MgStatus {
    guarded(|| {
        if problem.is_null() || out.is_null() {
            return fail(MgStatus::NullPointer, "null handle or output pointer");
        }
        *out = ptr::null_mut();
        match f(&(*problem).file) {
            Ok(r) => {
                let status = status_of(r.exit_code);
                if status != MgStatus::Ok {
                    set_error(&format!("{} finished with status {}", r.task, r.status));
                }
                write_string(out, r.to_json());
                status
            }
            Err(e) => fail(status_of(cli::exit_code(&e)), &e.to_string()),
        }
    })
}

/// Parses a problem file from TOML text. On success `*out` owns a handle
/// to be released with [`mg_problem_free`].
///
/// # Safety
/// `text` must be a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_problem_parse(text: *const c_char, out: *mut *mut MgProblem) -> MgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(MgStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match ProblemFile::parse(text) {
            Ok(file) => {
                *out = Box::into_raw(Box::new(MgProblem { file }));
                MgStatus::Ok
            }
            Err(e) => fail(MgStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Reads and parses a problem file.
///
/// # Safety
/// `path` must be a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_problem_load(path: *const c_char, out: *mut *mut MgProblem) -> MgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(MgStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let path = match read_str(path) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match ProblemFile::load(std::path::Path::new(path)) {
            Ok(file) => {
                *out = Box::into_raw(Box::new(MgProblem { file }));
                MgStatus::Ok
            }
            Err(e) => fail(MgStatus::InvalidInput, &e.to_string()),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `problem` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mg_problem_free(problem: *mut MgProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// The canonical serialization of a problem.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_problem_to_toml(problem: *const MgProblem, out: *mut *mut c_char) -> MgStatus {
    guarded(|| {
        if problem.is_null() || out.is_null() {
            return fail(MgStatus::NullPointer, "null handle or output pointer");
        }
        write_string(out, (*problem).file.to_canonical_string());
        MgStatus::Ok
    })
}

/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_verify(problem: *const MgProblem, kind: MgKind, out: *mut *mut c_char) -> MgStatus {
    let kind = match kind {
        MgKind::Assoc => Kind::Assoc,
        MgKind::Lie => Kind::Lie,
        MgKind::Bimodule => Kind::Bimodule,
        MgKind::Liemodule => Kind::Liemodule,
    };
    run_command(problem, out, |f| cli::cmd_verify(f, kind))
}

/// # Safety
/// `problem` must be a live handle, `lhs`/`rhs` nul-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_bracket(
    problem: *const MgProblem,
    lhs: *const c_char,
    rhs: *const c_char,
    which: MgWhich,
    out: *mut *mut c_char,
) -> MgStatus {
    let (lhs, rhs) = match (read_str(lhs), read_str(rhs)) {
        (Ok(a), Ok(b)) => (a.to_string(), b.to_string()),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let which = match which {
        MgWhich::Delta => Which::Delta,
        MgWhich::Wedge => Which::Wedge,
    };
    run_command(problem, out, |f| cli::cmd_bracket(f, &lhs, &rhs, which))
}

/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_cohomology(
    problem: *const MgProblem,
    theory: MgTheory,
    kmax: usize,
    out: *mut *mut c_char,
) -> MgStatus {
    let theory = match theory {
        MgTheory::Hochschild => Theory::Hochschild,
        MgTheory::Chevalley => Theory::Chevalley,
        MgTheory::Adjoint => Theory::Adjoint,
    };
    run_command(problem, out, |f| cli::cmd_cohomology(f, theory, kmax, None, false))
}

/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_deform(
    problem: *const MgProblem,
    order: usize,
    kmax: usize,
    out: *mut *mut c_char,
) -> MgStatus {
    run_command(problem, out, |f| cli::cmd_deform(f, order, kmax))
}

/// Message of the last failing call on this thread, or null. Owned by the
/// library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn mg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn mg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
