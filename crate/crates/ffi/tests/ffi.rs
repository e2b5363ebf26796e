use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use dpt_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { dpt_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let s = dpt_last_error_message();
    (!s.is_null()).then(|| take_string(s))
}

fn catalog(name: &str) -> *mut DptMotif {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_from_catalog(name.as_ptr(), &mut m) }, DptStatus::Ok);
    m
}

#[test]
fn json_round_trip_through_handles() {
    let m = catalog("E4");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_to_json(m, &mut json) }, DptStatus::Ok);
    let text = take_string(json);

    let c = CString::new(text.clone()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_from_json(c.as_ptr(), &mut back) }, DptStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_to_json(back, &mut again) }, DptStatus::Ok);
    assert_eq!(take_string(again), text);
    unsafe {
        dpt_motif_free(m);
        dpt_motif_free(back);
    }
}

#[test]
fn report_and_direction_count() {
    let m = catalog("ic-h");
    let mut n = 0usize;
    assert_eq!(unsafe { dpt_motif_direction_count(m, DptPolicy::LinkingAdjacency, &mut n) }, DptStatus::Ok);
    assert_eq!(n, 4);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_report_json(m, DptPolicy::LinkingAdjacency, &mut json) }, DptStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["direction_count"], 4);
    assert_eq!(v["name"], "ic-h");
    unsafe { dpt_motif_free(m) };
}

#[test]
fn rebase_and_cover_make_new_handles() {
    let e1 = catalog("E1");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_rebase(e1, 1, 0, 1, 1, false, &mut r) }, DptStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_report_json(r, DptPolicy::LinkingAdjacency, &mut json) }, DptStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["directions"][0]["direction"], serde_json::json!({"kind": "vector", "a": 1, "b": 1}));

    let mut c = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_cover(e1, 1, 0, 0, 2, &mut c) }, DptStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_report_json(c, DptPolicy::CrossingAdjacency, &mut json) }, DptStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["components"], 2);
    unsafe {
        dpt_motif_free(e1);
        dpt_motif_free(r);
        dpt_motif_free(c);
    }
}

#[test]
fn failures_set_status_and_message() {
    let mut m = ptr::null_mut();
    let bad = CString::new(r#"{"name": "x", "free_loops": [{"id": 0, "wrap": [1]}]}"#).unwrap();
    assert_eq!(unsafe { dpt_motif_from_json(bad.as_ptr(), &mut m) }, DptStatus::ParseError);
    assert!(m.is_null());
    assert!(last_error().unwrap().contains("free_loops[0].wrap"));

    let invalid = CString::new(r#"{"name": "x", "crossings": [{"id": 0, "sign": 1}]}"#).unwrap();
    assert_eq!(unsafe { dpt_motif_from_json(invalid.as_ptr(), &mut m) }, DptStatus::InvalidDiagram);

    let name = CString::new("nope").unwrap();
    assert_eq!(unsafe { dpt_motif_from_catalog(name.as_ptr(), &mut m) }, DptStatus::NotFound);
    assert_eq!(unsafe { dpt_motif_from_catalog(ptr::null(), &mut m) }, DptStatus::NullArgument);

    let e1 = catalog("E1");
    assert!(last_error().is_none(), "success clears the message");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { dpt_motif_rebase(e1, 0, 1, 1, 0, false, &mut r) }, DptStatus::Inapplicable);
    assert_eq!(unsafe { dpt_motif_cover(e1, 0, 0, 0, 0, &mut r) }, DptStatus::Inapplicable);
    assert_eq!(unsafe { dpt_motif_to_json(e1, ptr::null_mut()) }, DptStatus::NullArgument);
    unsafe {
        dpt_motif_free(e1);
        dpt_motif_free(ptr::null_mut());
        dpt_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/dpt.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["dpt_motif_from_json", "dpt_motif_cover", "dpt_last_error_message", "DPT_STATUS_INAPPLICABLE"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    // Compile-check only when a C compiler is around.
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
