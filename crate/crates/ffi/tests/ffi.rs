use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use separatrix_ffi::*;

fn parse(text: &str) -> (SeparatrixStatus, *mut SeparatrixDocument) {
    let c = CString::new(text).unwrap();
    let mut doc = ptr::null_mut();
    let s = unsafe { separatrix_parse(c.as_ptr(), &mut doc) };
    (s, doc)
}

fn run(doc: *const SeparatrixDocument, cmd: &str, fmt: &str) -> (SeparatrixStatus, Option<String>) {
    let (c, f) = (CString::new(cmd).unwrap(), CString::new(fmt).unwrap());
    let mut out = ptr::null_mut();
    let s = unsafe { separatrix_run(doc, c.as_ptr(), f.as_ptr(), &mut out) };
    if out.is_null() {
        return (s, None);
    }
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { separatrix_string_free(out) };
    (s, Some(text))
}

fn last_error() -> String {
    let p = separatrix_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn cusp_separatrix_json() {
    let (s, doc) = parse("name = cusp\nomega = -3*x^2 dx + 2*y dy\n");
    assert_eq!(s, SeparatrixStatus::Ok);
    let (s, json) = run(doc, "separatrix", "json");
    assert_eq!(s, SeparatrixStatus::Ok);
    let json = json.unwrap();
    assert!(json.contains("\"jet\": \"y = x^(3/2)\""), "{json}");
    let (_, again) = run(doc, "separatrix", "json");
    assert_eq!(again.unwrap(), json);
    unsafe { separatrix_document_free(doc) };
}

#[test]
fn every_command_and_format() {
    let (_, doc) = parse("omega = y dx + x dy");
    for cmd in ["resolve", "indices", "separatrix", "ramify", "curve-check"] {
        for fmt in ["text", "json", "dot"] {
            let (s, out) = run(doc, cmd, fmt);
            assert_eq!(s, SeparatrixStatus::Ok, "{cmd} {fmt}");
            assert!(!out.unwrap().is_empty());
        }
    }
    unsafe { separatrix_document_free(doc) };
}

#[test]
fn status_codes() {
    let (s, doc) = parse("omega = x +* y dx");
    assert_eq!(s, SeparatrixStatus::ParseError);
    assert!(doc.is_null());
    assert!(last_error().contains("line 1"), "{}", last_error());

    let (s, _) = parse("omega = dx + y dy");
    assert_eq!(s, SeparatrixStatus::ParseError);

    let (_, doc) = parse("curve = y^2 - x^3");
    let (s, out) = run(doc, "indices", "text");
    assert_eq!(s, SeparatrixStatus::ParseError);
    assert!(out.is_none());

    let (_, hard) = parse("dmax = 1\nomega = -3*x^2 dx + 2*y dy");
    let (s, _) = run(hard, "ramify", "json");
    assert_eq!(s, SeparatrixStatus::DomainError);
    assert!(last_error().contains("ramification"), "{}", last_error());
    unsafe { separatrix_document_free(hard) };
    let (s, _) = run(doc, "explode", "text");
    assert_eq!(s, SeparatrixStatus::InvalidArgument);
    let (s, _) = run(doc, "resolve", "xml");
    assert_eq!(s, SeparatrixStatus::InvalidArgument);
    let (s, _) = run(ptr::null(), "resolve", "text");
    assert_eq!(s, SeparatrixStatus::InvalidArgument);
    unsafe { separatrix_document_free(doc) };
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/separatrix.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["separatrix_parse", "separatrix_run", "separatrix_string_free", "separatrix_document_free", "separatrix_last_error"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler; skipped syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
