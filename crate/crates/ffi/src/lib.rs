//! C ABI over `separatrix-core`.
//!
//! Documents are opaque handles; every call returns a [`SeparatrixStatus`].
//! Strings handed out must be released with [`separatrix_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use separatrix_core::cli::{exit_code, parse_input, render, run_command, Command, Emit, GraphKind, InputDocument};
use separatrix_core::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatrixStatus {
    Ok = 0,
    /// Malformed input document or a command that does not apply to it.
    ParseError = 1,
    /// Input outside the supported domain or a failed computation.
    DomainError = 2,
    /// Null pointer, bad UTF-8 or unknown command / format name.
    InvalidArgument = 3,
    /// A Rust panic was caught at the boundary.
    Panic = 4,
}

/// Opaque parsed input document.
pub struct SeparatrixDocument {
    doc: InputDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: SeparatrixStatus, msg: impl Into<String>) -> SeparatrixStatus {
    set_error(msg);
    status
}

fn domain_status(e: &Error) -> SeparatrixStatus {
    if exit_code(e) == 1 {
        SeparatrixStatus::ParseError
    } else {
        SeparatrixStatus::DomainError
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, SeparatrixStatus> {
    if p.is_null() {
        return Err(fail(SeparatrixStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(SeparatrixStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn guard(f: impl FnOnce() -> SeparatrixStatus) -> SeparatrixStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SeparatrixStatus::Panic, "internal panic"),
    }
}

/// Parses `text` into a new document stored in `*out_doc`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out_doc` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn separatrix_parse(text: *const c_char, out_doc: *mut *mut SeparatrixDocument) -> SeparatrixStatus {
    guard(|| {
        if out_doc.is_null() {
            return fail(SeparatrixStatus::InvalidArgument, "out_doc is null");
        }
        *out_doc = ptr::null_mut();
        let text = match read_str(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_input(text) {
            Ok(doc) => {
                *out_doc = Box::into_raw(Box::new(SeparatrixDocument { doc }));
                SeparatrixStatus::Ok
            }
            Err(e) => fail(domain_status(&e), e.to_string()),
        }
    })
}

/// Runs `command` (`resolve`, `indices`, `separatrix`, `ramify`,
/// `curve-check`) and stores the report rendered as `format` (`text`,
/// `json`, `dot`) in `*out`.
///
/// # Safety
/// `doc` must come from [`separatrix_parse`]; strings must be NUL-terminated;
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn separatrix_run(
    doc: *const SeparatrixDocument,
    command: *const c_char,
    format: *const c_char,
    out: *mut *mut c_char,
) -> SeparatrixStatus {
    guard(|| {
        if out.is_null() {
            return fail(SeparatrixStatus::InvalidArgument, "out is null");
        }
        *out = ptr::null_mut();
        if doc.is_null() {
            return fail(SeparatrixStatus::InvalidArgument, "doc is null");
        }
        let (command, format) = match (read_str(command, "command"), read_str(format, "format")) {
            (Ok(c), Ok(f)) => (c, f),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let Ok(cmd) = command.parse::<Command>() else {
            return fail(SeparatrixStatus::InvalidArgument, format!("unknown command `{command}`"));
        };
        let Ok(emit) = format.parse::<Emit>() else {
            return fail(SeparatrixStatus::InvalidArgument, format!("unknown format `{format}`"));
        };
        match run_command(&(*doc).doc, cmd) {
            Ok(r) => {
                let s = render(&r, emit, GraphKind::Centers);
                *out = CString::new(s).expect("reports contain no NUL").into_raw();
                SeparatrixStatus::Ok
            }
            Err(e) => fail(domain_status(&e), e.to_string()),
        }
    })
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn separatrix_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by [`separatrix_run`]. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn separatrix_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a document. Null is ignored.
///
/// # Safety
/// `doc` must come from [`separatrix_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn separatrix_document_free(doc: *mut SeparatrixDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}
