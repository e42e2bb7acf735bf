//! C ABI over `smt-core`.
//!
//! Words, relations and reports cross the boundary as JSON strings in the
//! same wire format as the `smt` binary. Strings returned through an out
//! pointer are owned by the caller and must be released with
//! `smt_string_free`. Every function returns an `SmtStatus`; on failure the
//! message is available from `smt_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use smt_core::combinat::{enumerate_standard, Family, Grading, Word};
use smt_core::detvar::hilbert_dt;
use smt_core::dosetalg::{hilbert_kp, hilbert_rd};
use smt_core::straighten::{straighten_rewrite, straighten_solve, Catalog, StraightenContext};
use smt_core::verify::{criterion, CRITERIA};
use smt_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmtStatus {
    Ok = 0,
    /// A theorem-level check failed.
    Violation = 1,
    /// Malformed input: bad JSON, out-of-range index, unknown family.
    Invalid = 2,
    /// Sizes outside the supported range, or m < n.
    Unsupported = 3,
    NullPointer = 4,
    /// A string argument is not UTF-8.
    Utf8 = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
    Internal = 7,
}

/// Straightening context for fixed (n, m). Opaque to C.
pub struct SmtContext {
    ctx: StraightenContext,
    catalog: Option<Catalog>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> SmtStatus {
    match e {
        Error::TheoremViolation(_) | Error::IndependenceViolation(_) => SmtStatus::Violation,
        Error::Invalid(_) | Error::Parse(_) | Error::Json(_) | Error::UniverseMismatch => SmtStatus::Invalid,
        Error::Unsupported(_) | Error::PolynomialRegime(_) | Error::SizeBound(_) => SmtStatus::Unsupported,
        Error::Sampling(_) | Error::Io(_) => SmtStatus::Internal,
    }
}

/// Runs `f`, recording errors and catching panics.
fn guarded(f: impl FnOnce() -> Result<(), (SmtStatus, String)>) -> SmtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SmtStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside smt-core");
            SmtStatus::Panic
        }
    }
}

fn core<T>(r: smt_core::Result<T>) -> Result<T, (SmtStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (SmtStatus, String)> {
    if p.is_null() {
        return Err((SmtStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (SmtStatus::Utf8, "string argument is not UTF-8".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (SmtStatus, String)> {
    if out.is_null() {
        return Err((SmtStatus::NullPointer, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|_| (SmtStatus::Internal, "output contains a NUL byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn parse_word(s: &str) -> Result<Word, (SmtStatus, String)> {
    serde_json::from_str(s).map_err(|e| (SmtStatus::Invalid, format!("word JSON at column {}: {e}", e.column())))
}

/// Creates a context for (n, m); `*out` receives the handle.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn smt_context_new(n: usize, m: usize, out: *mut *mut SmtContext) -> SmtStatus {
    guarded(|| {
        if out.is_null() {
            return Err((SmtStatus::NullPointer, "null output pointer".into()));
        }
        let ctx = core(StraightenContext::new(n, m))?;
        *out = Box::into_raw(Box::new(SmtContext { ctx, catalog: None }));
        Ok(())
    })
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must come from `smt_context_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn smt_context_free(ctx: *mut SmtContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Straightens a JSON word by an exact solve; `*out_json` receives the relation.
///
/// # Safety
/// `ctx` must be a live handle, `word_json` a NUL-terminated string and
/// `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn smt_straighten(
    ctx: *const SmtContext,
    word_json: *const c_char,
    out_json: *mut *mut c_char,
) -> SmtStatus {
    guarded(|| {
        let c = ctx.as_ref().ok_or((SmtStatus::NullPointer, "null context".to_string()))?;
        let w = parse_word(read_str(word_json)?)?;
        let rel = core(straighten_solve(&c.ctx, &w))?;
        write_string(out_json, serde_json::to_string(&rel).map_err(|e| (SmtStatus::Internal, e.to_string()))?)
    })
}

/// Straightens by catalog substitution. The degree-2 catalog is built on the
/// first call and kept in the context.
///
/// # Safety
/// As for `smt_straighten`; `ctx` must not be used from two threads at once.
#[no_mangle]
pub unsafe extern "C" fn smt_rewrite(
    ctx: *mut SmtContext,
    word_json: *const c_char,
    out_json: *mut *mut c_char,
) -> SmtStatus {
    guarded(|| {
        let c = ctx.as_mut().ok_or((SmtStatus::NullPointer, "null context".to_string()))?;
        let w = parse_word(read_str(word_json)?)?;
        if c.catalog.is_none() {
            c.catalog = Some(core(Catalog::build(&c.ctx))?);
        }
        let (rel, _) = core(straighten_rewrite(&w, c.catalog.as_ref().expect("just built")))?;
        write_string(out_json, serde_json::to_string(&rel).map_err(|e| (SmtStatus::Internal, e.to_string()))?)
    })
}

/// Hilbert function value. `family` is "s", "dt", "rd" or "kp"; `t` is used
/// by "dt" only.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn smt_hilbert(
    family: *const c_char,
    n: usize,
    m: usize,
    t: usize,
    d: usize,
    out: *mut u64,
) -> SmtStatus {
    guarded(|| {
        if out.is_null() {
            return Err((SmtStatus::NullPointer, "null output pointer".into()));
        }
        let v = match read_str(family)? {
            "s" => core(enumerate_standard(m, n, Family::S, &Grading::Degree(d)))?.len(),
            "dt" => core(hilbert_dt(m, t, d))?,
            "rd" => core(hilbert_rd(m, n, d))?,
            "kp" => core(hilbert_kp(m, n, d))?,
            f => return Err((SmtStatus::Invalid, format!("unknown family {f:?}"))),
        };
        *out = v as u64;
        Ok(())
    })
}

/// Runs acceptance criterion `k` (1..=12). `*out_json` receives the report
/// whether or not it passes; the status is `Violation` when it fails.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn smt_verify_criterion(k: u32, seed: u64, out_json: *mut *mut c_char) -> SmtStatus {
    let mut failed = false;
    let s = guarded(|| {
        if k == 0 || k as usize > CRITERIA {
            return Err((SmtStatus::Invalid, format!("criteria are numbered 1..={CRITERIA}")));
        }
        let rep = core(criterion(k as usize, seed))?;
        failed = !rep.pass;
        write_string(out_json, serde_json::to_string(&rep).map_err(|e| (SmtStatus::Internal, e.to_string()))?)
    });
    if s == SmtStatus::Ok && failed {
        set_error(format!("criterion {k} failed"));
        return SmtStatus::Violation;
    }
    s
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn smt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn smt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn smt_version() -> *const c_char {
    static V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr() as *const c_char
}
