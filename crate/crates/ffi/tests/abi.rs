use std::ffi::{CStr, CString};
use std::ptr;

use serde_json::Value;
use smt_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(smt_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    smt_string_free(s);
    out
}

const PLUCKER: &str = r#"[{"t":"u","I":[1,4]},{"t":"u","I":[2,3]}]"#;

#[test]
fn straighten_round_trip() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(smt_context_new(2, 4, &mut ctx), SmtStatus::Ok);
        let word = CString::new(PLUCKER).unwrap();
        let mut a = ptr::null_mut();
        assert_eq!(smt_straighten(ctx, word.as_ptr(), &mut a), SmtStatus::Ok);
        let a: Value = serde_json::from_str(&take(a)).unwrap();
        let mut b = ptr::null_mut();
        assert_eq!(smt_rewrite(ctx, word.as_ptr(), &mut b), SmtStatus::Ok);
        let b: Value = serde_json::from_str(&take(b)).unwrap();
        assert_eq!(a["rhs"], b["rhs"]);
        assert_eq!(a["rhs"].as_array().unwrap().len(), 2);
        smt_context_free(ctx);
    }
}

#[test]
fn hilbert_values() {
    let mut v = 0u64;
    let dt = CString::new("dt").unwrap();
    for d in 0..5 {
        assert_eq!(unsafe { smt_hilbert(dt.as_ptr(), 0, 2, 2, d, &mut v) }, SmtStatus::Ok);
        assert_eq!(v, 2 * d as u64 + 1);
    }
    // degree-1 standard words of S(2,3): the three u's and six p's
    let s = CString::new("s").unwrap();
    assert_eq!(unsafe { smt_hilbert(s.as_ptr(), 2, 3, 0, 1, &mut v) }, SmtStatus::Ok);
    assert_eq!(v, 9);
    let bad = CString::new("xx").unwrap();
    assert_eq!(unsafe { smt_hilbert(bad.as_ptr(), 2, 3, 0, 1, &mut v) }, SmtStatus::Invalid);
    assert!(last_error().contains("xx"));
}

#[test]
fn error_codes() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(smt_context_new(3, 2, &mut ctx), SmtStatus::Unsupported);
        assert!(ctx.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(smt_context_new(2, 3, ptr::null_mut()), SmtStatus::NullPointer);

        assert_eq!(smt_context_new(2, 3, &mut ctx), SmtStatus::Ok);
        let mut out = ptr::null_mut();
        let bad = CString::new(r#"[{"t":"u""#).unwrap();
        assert_eq!(smt_straighten(ctx, bad.as_ptr(), &mut out), SmtStatus::Invalid);
        assert!(last_error().contains("column"));
        assert!(out.is_null());
        let word = CString::new(PLUCKER).unwrap();
        // index 4 is out of range for m = 3
        assert_eq!(smt_straighten(ctx, word.as_ptr(), &mut out), SmtStatus::Invalid);
        assert_eq!(smt_straighten(ctx, ptr::null(), &mut out), SmtStatus::NullPointer);
        assert_eq!(smt_straighten(ptr::null(), word.as_ptr(), &mut out), SmtStatus::NullPointer);
        let not_utf8 = [0xffu8, 0];
        assert_eq!(smt_straighten(ctx, not_utf8.as_ptr().cast(), &mut out), SmtStatus::Utf8);
        smt_context_free(ctx);
        smt_context_free(ptr::null_mut());
        smt_string_free(ptr::null_mut());
    }
}

#[test]
fn criteria_reports() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(smt_verify_criterion(1, 1, &mut out), SmtStatus::Ok);
        let rep: Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(rep["pass"], true);
        assert_eq!(smt_verify_criterion(0, 1, &mut out), SmtStatus::Invalid);
        assert_eq!(smt_verify_criterion(13, 1, &mut out), SmtStatus::Invalid);
    }
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(smt_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/smt.h")).unwrap();
    for name in [
        "smt_context_new",
        "smt_context_free",
        "smt_straighten",
        "smt_rewrite",
        "smt_hilbert",
        "smt_verify_criterion",
        "smt_string_free",
        "smt_last_error",
        "smt_version",
        "typedef struct SmtContext SmtContext",
        "SMT_STATUS_VIOLATION = 1",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}
