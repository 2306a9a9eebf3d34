//! C ABI over `ci-invariants`.
//!
//! Multidegrees live behind opaque `CiMultidegree` handles. Every fallible
//! call returns a `CiStatus` and writes its result through an out-pointer;
//! big integers and structured results come back as NUL-terminated UTF-8
//! strings (decimal or JSON) that the caller releases with `ci_string_free`.
//! On failure `ci_last_error` returns a message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use ci_invariants::search::SearchParams;
use ci_invariants::{
    classify, compose, difference_decomposed, find_pairs, moduli_dimension, monotonic_scan,
    same_homeomorphism_data, verify_pair, ComposedSpec, EquivalenceLevel, Error, ExponentRule,
    Multidegree,
};

/// Result codes; values 2..=4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Excluded = 3,
    Budget = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiExponentRule {
    Floor = 0,
    Ceiling = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiEquivalenceLevel {
    DistinctInvariants = 0,
    SameInvariants = 1,
    SameInvariantsPlusDivisibility = 2,
}

/// Opaque multidegree handle.
pub struct CiMultidegree(Multidegree);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> CiStatus {
    match err {
        Error::Excluded(_) => CiStatus::Excluded,
        Error::Budget { .. } => CiStatus::Budget,
        _ => CiStatus::InvalidInput,
    }
}

enum Failure {
    Null,
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, mapping errors and panics to a status and recording the message.
fn guard<F>(f: F) -> CiStatus
where
    F: FnOnce() -> Result<(), Failure> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => CiStatus::Ok,
        Ok(Err(Failure::Null)) => {
            set_error("null pointer argument");
            CiStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            CiStatus::Internal
        }
    }
}

unsafe fn handle<'a>(p: *const CiMultidegree) -> Result<&'a Multidegree, Failure> {
    p.as_ref().map(|h| &h.0).ok_or(Failure::Null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).expect("no interior NUL in generated text");
    write_out(out, c.into_raw())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Validates `len` degrees and creates a handle in `*out`.
///
/// # Safety
/// `degrees` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_multidegree_new(
    degrees: *const i64,
    len: usize,
    out: *mut *mut CiMultidegree,
) -> CiStatus {
    guard(|| {
        if degrees.is_null() && len > 0 {
            return Err(Failure::Null);
        }
        let raw = if len == 0 { &[][..] } else { std::slice::from_raw_parts(degrees, len) };
        let md = Multidegree::new(raw.iter().copied())?;
        write_out(out, Box::into_raw(Box::new(CiMultidegree(md))))
    })
}

/// # Safety
/// `md` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ci_multidegree_free(md: *mut CiMultidegree) {
    if !md.is_null() {
        drop(Box::from_raw(md));
    }
}

/// Number of degrees `r`; zero for a null handle.
///
/// # Safety
/// `md` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ci_multidegree_len(md: *const CiMultidegree) -> usize {
    md.as_ref().map_or(0, |h| h.0.len())
}

/// Copies the canonical (non-increasing) degrees into `buf`, which must hold
/// `ci_multidegree_len(md)` entries.
///
/// # Safety
/// `buf` must be writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ci_multidegree_degrees(
    md: *const CiMultidegree,
    buf: *mut u64,
    cap: usize,
) -> CiStatus {
    guard(|| {
        let md = handle(md)?;
        if buf.is_null() {
            return Err(Failure::Null);
        }
        if cap < md.len() {
            return Err(Error::Input(format!("buffer holds {cap}, need {}", md.len())).into());
        }
        ptr::copy_nonoverlapping(md.degrees().as_ptr(), buf, md.len());
        Ok(())
    })
}

/// `lambda` copies of `a` followed by `mu` copies of `b`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_compose(
    a: *const CiMultidegree,
    b: *const CiMultidegree,
    lambda: u32,
    mu: u32,
    out: *mut *mut CiMultidegree,
) -> CiStatus {
    guard(|| {
        let spec = ComposedSpec::new(handle(a)?.clone(), handle(b)?.clone(), lambda, mu);
        let md = compose(&spec)?;
        write_out(out, Box::into_raw(Box::new(CiMultidegree(md))))
    })
}

/// Total degree as a decimal string.
///
/// # Safety
/// `md` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_total_degree(md: *const CiMultidegree, out: *mut *mut c_char) -> CiStatus {
    guard(|| write_string(out, handle(md)?.total_degree().to_string()))
}

/// `s_i` as a decimal string.
///
/// # Safety
/// `md` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_power_sum(
    md: *const CiMultidegree,
    i: u32,
    out: *mut *mut c_char,
) -> CiStatus {
    guard(|| write_string(out, handle(md)?.power_sum(i)?.to_string()))
}

/// `{"n":..,"d":"..","s":[..]}`.
///
/// # Safety
/// `md` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_invariants_json(
    md: *const CiMultidegree,
    n: u32,
    out: *mut *mut c_char,
) -> CiStatus {
    guard(|| write_string(out, to_json(&handle(md)?.invariant_tuple(n)?)))
}

/// Moduli dimension as a decimal string.
///
/// # Safety
/// `md` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_moduli_dimension(
    md: *const CiMultidegree,
    n: u32,
    out: *mut *mut c_char,
) -> CiStatus {
    guard(|| write_string(out, moduli_dimension(handle(md)?, n)?.m.to_string()))
}

/// Moduli report as JSON; `breakdown` adds the per-subset-size corrections.
///
/// # Safety
/// `md` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_moduli_report_json(
    md: *const CiMultidegree,
    n: u32,
    breakdown: bool,
    out: *mut *mut c_char,
) -> CiStatus {
    guard(|| {
        let report = moduli_dimension(handle(md)?, n)?;
        write_string(out, report.to_json(breakdown).to_string())
    })
}

/// `m(d_{lambda+1,s-lambda-1}) - m(d_{lambda,s-lambda})` report as JSON.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_difference_json(
    a: *const CiMultidegree,
    b: *const CiMultidegree,
    n: u32,
    lambda: u32,
    s: u32,
    out: *mut *mut c_char,
) -> CiStatus {
    guard(|| {
        let rep = difference_decomposed(handle(a)?, handle(b)?, n, lambda, s)?;
        write_string(out, to_json(&rep))
    })
}

/// Scan over `lambda = 0..=s` as JSON.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_scan_json(
    a: *const CiMultidegree,
    b: *const CiMultidegree,
    n: u32,
    s: u32,
    out: *mut *mut c_char,
) -> CiStatus {
    guard(|| write_string(out, to_json(&monotonic_scan(handle(a)?, handle(b)?, n, s)?)))
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_same_homeomorphism_data(
    a: *const CiMultidegree,
    b: *const CiMultidegree,
    n: u32,
    out: *mut bool,
) -> CiStatus {
    guard(|| write_out(out, same_homeomorphism_data(handle(a)?, handle(b)?, n)?))
}

fn rule_of(rule: CiExponentRule) -> ExponentRule {
    match rule {
        CiExponentRule::Floor => ExponentRule::Floor,
        CiExponentRule::Ceiling => ExponentRule::Ceiling,
    }
}

/// Writes the verdict level to `level` and, when `json` is non-null, the full
/// verdict as JSON to `*json`.
///
/// # Safety
/// Handles must be live; `level` must be writable; `json` may be null.
#[no_mangle]
pub unsafe extern "C" fn ci_classify(
    a: *const CiMultidegree,
    b: *const CiMultidegree,
    n: u32,
    rule: CiExponentRule,
    level: *mut CiEquivalenceLevel,
    json: *mut *mut c_char,
) -> CiStatus {
    guard(|| {
        let verdict = classify(handle(a)?, handle(b)?, n, rule_of(rule))?;
        let l = match verdict.level {
            EquivalenceLevel::DistinctInvariants => CiEquivalenceLevel::DistinctInvariants,
            EquivalenceLevel::SameInvariants => CiEquivalenceLevel::SameInvariants,
            EquivalenceLevel::SameInvariantsPlusDivisibility => {
                CiEquivalenceLevel::SameInvariantsPlusDivisibility
            }
        };
        write_out(level, l)?;
        if !json.is_null() {
            write_string(json, to_json(&verdict))?;
        }
        Ok(())
    })
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_verify_pair(
    a: *const CiMultidegree,
    b: *const CiMultidegree,
    k: u32,
    out: *mut bool,
) -> CiStatus {
    guard(|| write_out(out, verify_pair(handle(a)?, handle(b)?, k)?.verified))
}

/// Search hits as JSON lines (empty string when none).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ci_find_pairs_json(
    r: usize,
    k: u32,
    lo: u64,
    hi: u64,
    budget: u64,
    out: *mut *mut c_char,
) -> CiStatus {
    guard(|| {
        let pairs = find_pairs(&SearchParams { r, k, lo, hi, budget })?;
        let mut text = String::new();
        for p in &pairs {
            text.push_str(&to_json(p));
            text.push('\n');
        }
        write_string(out, text)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ci_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ci_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ci_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(
        concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes(),
    ) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}
