//! C ABI over `dpt-core`.
//!
//! Motifs live behind an opaque `DptMotif` handle. Every call returns a
//! `DptStatus`; on failure `dpt_last_error_message` describes what went wrong
//! on the calling thread. Strings handed out by this library are released
//! with `dpt_string_free`, handles with `dpt_motif_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dpt_core::compound::Policy;
use dpt_core::lattice::Matrix2;
use dpt_core::motif::TorusDiagram;
use dpt_core::report::invariant_report;
use dpt_core::{catalog, format, moves, DptError};

/// Opaque motif handle.
pub struct DptMotif {
    diagram: TorusDiagram,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DptStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidDiagram = 4,
    Inapplicable = 5,
    Undetermined = 6,
    NotFound = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DptPolicy {
    LinkingAdjacency = 0,
    CrossingAdjacency = 1,
}

impl From<DptPolicy> for Policy {
    fn from(p: DptPolicy) -> Self {
        match p {
            DptPolicy::LinkingAdjacency => Policy::LinkingAdjacency,
            DptPolicy::CrossingAdjacency => Policy::CrossingAdjacency,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(DptStatus, String);

impl From<DptError> for Failure {
    fn from(e: DptError) -> Self {
        let status = match e {
            DptError::Parse { .. } => DptStatus::ParseError,
            DptError::InvalidDiagram(_) => DptStatus::InvalidDiagram,
            DptError::Inapplicable(_)
            | DptError::NotUnimodular(_)
            | DptError::OrientationReversing(_)
            | DptError::InvalidCover(_) => DptStatus::Inapplicable,
            DptError::DecompositionUndetermined(_) | DptError::EmptyMotif | DptError::NoElements => {
                DptStatus::Undetermined
            }
            DptError::UnknownCatalogEntry(_) => DptStatus::NotFound,
            _ => DptStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `f`, records any error and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DptStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DptStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DptStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(DptStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(DptStatus::InvalidUtf8, format!("{what}: {e}")))
}

/// # Safety
/// `m` must be null or a live handle.
unsafe fn motif<'a>(m: *const DptMotif) -> Result<&'a DptMotif, Failure> {
    m.as_ref().ok_or_else(|| null("motif"))
}

/// # Safety
/// `out` must be null or writable.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn into_handle(diagram: TorusDiagram) -> *mut DptMotif {
    Box::into_raw(Box::new(DptMotif { diagram }))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|e| Failure(DptStatus::Internal, e.to_string()))
}

/// Parses and validates a motif file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpt_motif_from_json(json: *const c_char, out: *mut *mut DptMotif) -> DptStatus {
    guard(|| {
        let d = format::parse(read_str(json, "json")?)?;
        put(out, into_handle(d))
    })
}

/// Loads a built-in catalog motif by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpt_motif_from_catalog(name: *const c_char, out: *mut *mut DptMotif) -> DptStatus {
    guard(|| {
        let d = catalog::get(read_str(name, "name")?)?;
        put(out, into_handle(d))
    })
}

/// # Safety
/// `m` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpt_motif_free(m: *mut DptMotif) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Serializes the motif; free the result with `dpt_string_free`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpt_motif_to_json(m: *const DptMotif, out: *mut *mut c_char) -> DptStatus {
    guard(|| {
        let s = format::serialize(&motif(m)?.diagram);
        put(out, into_c_string(s)?)
    })
}

/// The structured invariant report as JSON; free with `dpt_string_free`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpt_motif_report_json(m: *const DptMotif, policy: DptPolicy, out: *mut *mut c_char) -> DptStatus {
    guard(|| {
        let r = invariant_report(&motif(m)?.diagram, policy.into())?;
        let s = serde_json::to_string(&r).map_err(|e| Failure(DptStatus::Internal, e.to_string()))?;
        put(out, into_c_string(s)?)
    })
}

/// Number of distinct directions; `Undetermined` when a cluster is too large.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpt_motif_direction_count(m: *const DptMotif, policy: DptPolicy, out: *mut usize) -> DptStatus {
    guard(|| {
        let r = invariant_report(&motif(m)?.diagram, policy.into())?;
        let n = r
            .direction_count
            .ok_or_else(|| Failure(DptStatus::Undetermined, "decomposition-undetermined".into()))?;
        put(out, n)
    })
}

/// New motif under the basis change `[[m11, m12], [m21, m22]]`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpt_motif_rebase(
    m: *const DptMotif,
    m11: i64,
    m12: i64,
    m21: i64,
    m22: i64,
    allow_reflection: bool,
    out: *mut *mut DptMotif,
) -> DptStatus {
    guard(|| {
        let d = moves::rebase(&motif(m)?.diagram, &Matrix2::new(m11, m12, m21, m22), allow_reflection)?;
        put(out, into_handle(d))
    })
}

/// New motif: the cover for the sublattice spanned by the columns of `l`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpt_motif_cover(
    m: *const DptMotif,
    l11: i64,
    l12: i64,
    l21: i64,
    l22: i64,
    out: *mut *mut DptMotif,
) -> DptStatus {
    guard(|| {
        let c = moves::cover(&motif(m)?.diagram, &Matrix2::new(l11, l12, l21, l22))?;
        put(out, into_handle(c.diagram))
    })
}

/// Message for the last failed call on this thread, or null. The caller owns
/// the copy and frees it with `dpt_string_free`.
#[no_mangle]
pub extern "C" fn dpt_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
