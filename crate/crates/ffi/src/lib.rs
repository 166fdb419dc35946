//! C ABI over `lts-core`.
//!
//! Objects are opaque handles created by `*_from_json` and released by the
//! matching `*_free`. Every fallible call returns an [`LtsStatus`]; on a
//! non-OK status [`lts_last_error`] describes the problem. Strings returned
//! through `char **` are owned by the caller and released with
//! [`lts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lts_core::cli::{self, AlgebraFile, MapFile, RepresentationFile, TwistPaths};
use lts_core::{Error, LinearMap, Representation, TripleSystem};

/// Status codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LtsStatus {
    Ok = 0,
    /// A mathematical precondition does not hold.
    Failure = 1,
    /// Malformed input or inconsistent dimensions.
    InputError = 2,
    /// Two independent computations disagree.
    InternalError = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Which twisting computations to run.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LtsTwistPaths {
    Series = 0,
    Conjugation = 1,
    Both = 2,
}

/// A Lie triple system.
pub struct LtsSystem(TripleSystem);

/// A representation of a Lie triple system.
pub struct LtsRepresentation(Representation);

/// A linear map in the column convention.
pub struct LtsMap(LinearMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Fallible = Result<(), (LtsStatus, String)>;

fn from_core(e: Error) -> (LtsStatus, String) {
    let status = match cli::exit_code(&e) {
        1 => LtsStatus::Failure,
        2 => LtsStatus::InputError,
        _ => LtsStatus::InternalError,
    };
    (status, e.to_string())
}

fn guard(f: impl FnOnce() -> Fallible) -> LtsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LtsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside lts-core".into());
            LtsStatus::Panic
        }
    }
}

fn null(what: &str) -> (LtsStatus, String) {
    (LtsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (LtsStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (LtsStatus::InputError, format!("{what} is not UTF-8: {e}")))
}

unsafe fn parse<T: for<'de> serde::Deserialize<'de>>(p: *const c_char, what: &str) -> Result<T, (LtsStatus, String)> {
    serde_json::from_str(read_str(p, what)?).map_err(|e| (LtsStatus::InputError, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (LtsStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T, what: &str) -> Fallible {
    if out.is_null() {
        return Err(null(what));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Fallible {
    if out.is_null() {
        return Err(null("output string pointer"));
    }
    let c = CString::new(s).map_err(|e| (LtsStatus::InternalError, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn rep_or_adjoint(sys: &TripleSystem, rep: *const LtsRepresentation) -> Representation {
    match rep.as_ref() {
        Some(r) => r.0.clone(),
        None => sys.adjoint_representation(),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last non-OK status on this thread, or NULL. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra document (`{"dim": n, "entries": [...]}`).
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_system_from_json(json: *const c_char, out: *mut *mut LtsSystem) -> LtsStatus {
    guard(|| {
        let file: AlgebraFile = parse(json, "algebra JSON")?;
        let t = file.to_system().map_err(from_core)?;
        write_out(out, LtsSystem(t), "output handle")
    })
}

/// # Safety
/// `sys` must come from [`lts_system_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lts_system_free(sys: *mut LtsSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Dimension of the system, or 0 for NULL.
///
/// # Safety
/// `sys` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn lts_system_dim(sys: *const LtsSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.dim())
}

/// Serializes the system as an algebra document.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_system_to_json(sys: *const LtsSystem, out: *mut *mut c_char) -> LtsStatus {
    guard(|| {
        let t = &deref(sys, "system")?.0;
        let json = serde_json::to_string(&AlgebraFile::from_system(t))
            .map_err(|e| (LtsStatus::InternalError, e.to_string()))?;
        write_string(out, json)
    })
}

/// Checks the three axioms; `*passed` receives the outcome. Writes the
/// verify report as JSON to `report` when it is not NULL.
///
/// # Safety
/// `sys` must be a live handle; `passed` must be writable; `report` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn lts_system_check_axioms(
    sys: *const LtsSystem,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> LtsStatus {
    guard(|| {
        let t = &deref(sys, "system")?.0;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let r = cli::verify(t, None).map_err(from_core)?;
        *passed = r.passed;
        if !report.is_null() {
            write_string(report, serde_json::to_string(&r).map_err(|e| (LtsStatus::InternalError, e.to_string()))?)?;
        }
        Ok(())
    })
}

/// Parses a representation document (`{"base_dim", "carrier_dim", "entries"}`).
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_representation_from_json(
    json: *const c_char,
    out: *mut *mut LtsRepresentation,
) -> LtsStatus {
    guard(|| {
        let file: RepresentationFile = parse(json, "representation JSON")?;
        let r = file.to_representation().map_err(from_core)?;
        write_out(out, LtsRepresentation(r), "output handle")
    })
}

/// # Safety
/// `rep` must come from [`lts_representation_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lts_representation_free(rep: *mut LtsRepresentation) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Parses a map document (`{"rows", "cols", "entries"}`, column convention).
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_map_from_json(json: *const c_char, out: *mut *mut LtsMap) -> LtsStatus {
    guard(|| {
        let file: MapFile = parse(json, "map JSON")?;
        let m = file.to_map().map_err(from_core)?;
        write_out(out, LtsMap(m), "output handle")
    })
}

/// # Safety
/// `map` must come from [`lts_map_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lts_map_free(map: *mut LtsMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Relative Rota-Baxter identity for `map` with respect to `rep` (the
/// adjoint representation when `rep` is NULL). On failure the first failing
/// basis triple is written to `counterexample[0..3]` when it is not NULL.
///
/// # Safety
/// Handles must be live (`rep` may be NULL); `holds` must be writable;
/// `counterexample` must be NULL or point to three writable `size_t`.
#[no_mangle]
pub unsafe extern "C" fn lts_check_relative_rb(
    sys: *const LtsSystem,
    rep: *const LtsRepresentation,
    map: *const LtsMap,
    holds: *mut bool,
    counterexample: *mut usize,
) -> LtsStatus {
    guard(|| {
        let t = &deref(sys, "system")?.0;
        let m = &deref(map, "map")?.0;
        if holds.is_null() {
            return Err(null("holds"));
        }
        let r = rep_or_adjoint(t, rep);
        let check = lts_core::constructions::check_relative_rb(m, t, &r).map_err(from_core)?;
        *holds = check.holds;
        if let (Some(ce), false) = (check.counterexample, counterexample.is_null()) {
            ptr::copy_nonoverlapping(ce.as_ptr(), counterexample, 3);
        }
        Ok(())
    })
}

/// Twists the semidirect product by `map` and writes the JSON twist report
/// (entries, classification, path agreement) to `out`.
///
/// # Safety
/// Handles must be live (`rep` may be NULL); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_twist_report(
    sys: *const LtsSystem,
    rep: *const LtsRepresentation,
    map: *const LtsMap,
    paths: LtsTwistPaths,
    out: *mut *mut c_char,
) -> LtsStatus {
    guard(|| {
        let t = &deref(sys, "system")?.0;
        let m = &deref(map, "map")?.0;
        let r = rep_or_adjoint(t, rep);
        let paths = match paths {
            LtsTwistPaths::Series => TwistPaths::Series,
            LtsTwistPaths::Conjugation => TwistPaths::Conjugation,
            LtsTwistPaths::Both => TwistPaths::Both,
        };
        let report = cli::twist_report(t, &r, m, paths, false).map_err(from_core)?;
        write_string(out, serde_json::to_string(&report).map_err(|e| (LtsStatus::InternalError, e.to_string()))?)
    })
}

/// Maurer-Cartan residual of `map` cross-checked against the Rota-Baxter
/// identity; writes the JSON report to `out`. Returns
/// `LTS_STATUS_INTERNAL_ERROR` when the two disagree.
///
/// # Safety
/// Handles must be live (`rep` may be NULL); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lts_mc_report(
    sys: *const LtsSystem,
    rep: *const LtsRepresentation,
    map: *const LtsMap,
    out: *mut *mut c_char,
) -> LtsStatus {
    guard(|| {
        let t = &deref(sys, "system")?.0;
        let m = &deref(map, "map")?.0;
        let r = rep_or_adjoint(t, rep);
        let report = cli::mc_report(t, &r, m).map_err(from_core)?;
        let agree = report.agree;
        write_string(out, serde_json::to_string(&report).map_err(|e| (LtsStatus::InternalError, e.to_string()))?)?;
        if agree {
            Ok(())
        } else {
            Err((LtsStatus::InternalError, "Maurer-Cartan residual and Rota-Baxter check disagree".into()))
        }
    })
}
