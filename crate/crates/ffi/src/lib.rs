//! C ABI over `gradedpi`.
//!
//! Handles are opaque and owned by the caller; free them with the matching
//! `*_free`. Strings returned through `char **` are freed with
//! `gp_string_free`. Every fallible call returns a [`GpStatus`] and, on
//! failure, records a message readable with `gp_last_error_message` on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gradedpi::algebras::catalog;
use gradedpi::cli::{resolve_basis, specfile};
use gradedpi::freealg::parse::parse_polynomial;
use gradedpi::pitool::{self, Mode, VerificationReport, VerifyOptions};
use gradedpi::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpStatus {
    Ok = 0,
    VerificationFailed = 1,
    ParseError = 2,
    Precondition = 3,
    ResourceLimit = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpMode {
    Identities = 0,
    Centrals = 1,
}

/// A graded algebra plus any generator sets named in its spec file.
pub struct GpAlgebra {
    file: specfile::AlgebraFile,
}

pub struct GpReport {
    report: VerificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GpStatus {
    match e.exit_code() {
        1 => GpStatus::VerificationFailed,
        2 => GpStatus::ParseError,
        3 => GpStatus::Precondition,
        4 => GpStatus::ResourceLimit,
        _ => GpStatus::Internal,
    }
}

fn fail(e: Error) -> GpStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> GpStatus) -> GpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            GpStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, GpStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(GpStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        GpStatus::InvalidUtf8
    })
}

unsafe fn give_string(s: String, out: *mut *mut c_char) -> GpStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            GpStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            GpStatus::Internal
        }
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

fn null_out() -> GpStatus {
    set_error("null output pointer");
    GpStatus::NullPointer
}

/// Builds a catalog algebra such as `"m2-4"` or `"pauli(3)"`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_algebra_from_catalog(
    id: *const c_char,
    out: *mut *mut GpAlgebra,
) -> GpStatus {
    guard(|| {
        if out.is_null() {
            return null_out();
        }
        let id = try_ffi!(read_str(id));
        match catalog::build(id) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(GpAlgebra {
                    file: specfile::AlgebraFile {
                        algebra: a,
                        generators: vec![],
                    },
                }));
                GpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses the text of an algebra spec file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_algebra_from_spec(
    text: *const c_char,
    out: *mut *mut GpAlgebra,
) -> GpStatus {
    guard(|| {
        if out.is_null() {
            return null_out();
        }
        let text = try_ffi!(read_str(text));
        match specfile::parse_algebra(text) {
            Ok(file) => {
                *out = Box::into_raw(Box::new(GpAlgebra { file }));
                GpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Real dimension; 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gp_algebra_dim(a: *const GpAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.file.algebra.dim())
}

/// Exports the algebra as spec-file text.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_algebra_to_spec(
    a: *const GpAlgebra,
    out: *mut *mut c_char,
) -> GpStatus {
    guard(|| {
        let Some(a) = a.as_ref() else {
            set_error("null algebra");
            return GpStatus::NullPointer;
        };
        if out.is_null() {
            return null_out();
        }
        give_string(specfile::export_algebra(&a.file.algebra), out)
    })
}

/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_algebra_free(a: *mut GpAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Verifies a named basis (as accepted by `gradedpi verify --basis`) up to
/// `max_degree`. The report is written to `out` whenever the check ran, so
/// `GP_STATUS_VERIFICATION_FAILED` still returns a report to inspect.
///
/// # Safety
/// `a` must be a live handle, `basis` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_verify(
    a: *const GpAlgebra,
    basis: *const c_char,
    mode: GpMode,
    max_degree: u32,
    out: *mut *mut GpReport,
) -> GpStatus {
    guard(|| {
        let Some(a) = a.as_ref() else {
            set_error("null algebra");
            return GpStatus::NullPointer;
        };
        if out.is_null() {
            return null_out();
        }
        *out = ptr::null_mut();
        let basis = try_ffi!(read_str(basis));
        let mode = match mode {
            GpMode::Identities => Mode::Identities,
            GpMode::Centrals => Mode::Centrals,
        };
        let s = match resolve_basis(basis, &a.file, mode, max_degree as usize) {
            Ok(s) => s,
            Err(e) => return fail(e),
        };
        let opts = VerifyOptions {
            max_degree: max_degree as usize,
            ..Default::default()
        };
        match pitool::verify_basis(&a.file.algebra, &s, &opts) {
            Ok(report) => {
                let passed = report.passed;
                *out = Box::into_raw(Box::new(GpReport { report }));
                if passed {
                    GpStatus::Ok
                } else {
                    set_error("verification failed");
                    GpStatus::VerificationFailed
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn gp_report_passed(r: *const GpReport) -> bool {
    r.as_ref().is_some_and(|r| r.report.passed)
}

/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_report_to_json(r: *const GpReport, out: *mut *mut c_char) -> GpStatus {
    guard(|| {
        let Some(r) = r.as_ref() else {
            set_error("null report");
            return GpStatus::NullPointer;
        };
        if out.is_null() {
            return null_out();
        }
        give_string(r.report.to_json(), out)
    })
}

/// # Safety
/// `r` must be null or a report not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_report_free(r: *mut GpReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Decides whether a polynomial literal is a graded identity of `a`.
///
/// # Safety
/// `a` must be a live handle, `poly` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_is_identity(
    a: *const GpAlgebra,
    poly: *const c_char,
    out: *mut bool,
) -> GpStatus {
    guard(|| {
        let Some(a) = a.as_ref() else {
            set_error("null algebra");
            return GpStatus::NullPointer;
        };
        if out.is_null() {
            return null_out();
        }
        let poly = try_ffi!(read_str(poly));
        let alg = &a.file.algebra;
        let result = parse_polynomial(poly, alg.group(), alg.order())
            .and_then(|p| pitool::is_identity(alg, &p));
        match result {
            Ok(c) => {
                *out = c.holds;
                GpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
