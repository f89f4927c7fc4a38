//! C interface. Every fallible call returns an `int32_t` status (`ELF_OK` on
//! success) and writes its result through an out pointer; the message for
//! the last failure on the calling thread is available from
//! [`elf_last_error_message`].
//!
//! Handles are opaque and must be released with their `_free` function.
//! Strings returned through `char **` are owned by the caller and released
//! with [`elf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use elevenfloer::diagram::DiagramDescription;
use elevenfloer::floer::window_limit_from_env;
use elevenfloer::pretzel::closed_form;
use elevenfloer::report::RunReport;
use elevenfloer::{run_diagram, EngineRun, Error};

pub const ELF_OK: i32 = 0;
/// Malformed JSON or an invalid diagram.
pub const ELF_ERR_INVALID_INPUT: i32 = 1;
/// An internal consistency check failed.
pub const ELF_ERR_CONSISTENCY: i32 = 2;
pub const ELF_ERR_IO: i32 = 3;
pub const ELF_ERR_NULL_POINTER: i32 = 4;
/// Rust code panicked; the handle arguments are untouched.
pub const ELF_ERR_PANIC: i32 = 5;

/// A parsed, not yet validated diagram.
pub struct ElfDiagram(DiagramDescription);

/// The result of running the engine on a diagram.
pub struct ElfRun(EngineRun);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: &Error) -> i32 {
    set_error(e.to_string());
    e.exit_code()
}

fn guard(f: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("panic inside elevenfloer".into());
            ELF_ERR_PANIC
        }
    }
}

fn null_arg(name: &str) -> i32 {
    set_error(format!("{name} is null"));
    ELF_ERR_NULL_POINTER
}

/// # Safety
/// `out` must be valid for writes.
unsafe fn give_string(s: String, out: *mut *mut c_char) -> i32 {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            ELF_OK
        }
        Err(_) => {
            set_error("output contains a NUL byte".into());
            ELF_ERR_CONSISTENCY
        }
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn elf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse a diagram from NUL-terminated UTF-8 JSON.
///
/// # Safety
/// `json` must be a valid C string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elf_diagram_from_json(json: *const c_char, out: *mut *mut ElfDiagram) -> i32 {
    guard(|| {
        if json.is_null() {
            return null_arg("json");
        }
        if out.is_null() {
            return null_arg("out");
        }
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(e) => return fail(&Error::Parse(e.to_string())),
        };
        match DiagramDescription::from_json(text) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(ElfDiagram(d)));
                ELF_OK
            }
            Err(e) => fail(&Error::Parse(e.to_string())),
        }
    })
}

/// # Safety
/// `d` must be NULL or a handle from [`elf_diagram_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn elf_diagram_free(d: *mut ElfDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Validate the diagram and compute its complex, homology and tau.
///
/// # Safety
/// `d` must be a live diagram handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elf_compute(d: *const ElfDiagram, out: *mut *mut ElfRun) -> i32 {
    guard(|| {
        if d.is_null() {
            return null_arg("diagram");
        }
        if out.is_null() {
            return null_arg("out");
        }
        match run_diagram(&(*d).0, window_limit_from_env()) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(ElfRun(r)));
                ELF_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `r` must be NULL or a handle from [`elf_compute`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn elf_run_free(r: *mut ElfRun) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live run handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elf_run_tau(r: *const ElfRun, out: *mut i64) -> i32 {
    if r.is_null() {
        return null_arg("run");
    }
    if out.is_null() {
        return null_arg("out");
    }
    *out = (*r).0.analysis.tau;
    ELF_OK
}

/// Seifert genus, the largest Alexander grading with nonzero homology.
///
/// # Safety
/// `r` must be a live run handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elf_run_genus(r: *const ElfRun, out: *mut i64) -> i32 {
    if r.is_null() {
        return null_arg("run");
    }
    if out.is_null() {
        return null_arg("out");
    }
    *out = (*r).0.analysis.table.genus;
    ELF_OK
}

/// The JSON report (homology, tau, genus, bounds, checks).
///
/// # Safety
/// `r` must be a live run handle; `out` must be valid for writes. Free the
/// string with [`elf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn elf_run_hfk_json(r: *const ElfRun, out: *mut *mut c_char) -> i32 {
    guard(|| {
        if r.is_null() {
            return null_arg("run");
        }
        if out.is_null() {
            return null_arg("out");
        }
        let a = &(*r).0.analysis;
        give_string(RunReport::new(&a.table, a.checks.clone()).to_json(), out)
    })
}

/// JSON report of the closed-form homology of P(-2, m, n), odd `m >= n >= 3`.
///
/// # Safety
/// `out` must be valid for writes. Free the string with [`elf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn elf_pretzel_closed_form_json(m: i64, n: i64, out: *mut *mut c_char) -> i32 {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match closed_form(m, n) {
            Ok(t) => give_string(RunReport::new(&t, Default::default()).to_json(), out),
            Err(e) => fail(&e.into()),
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn elf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
