//! C ABI over the `dihedral-free` verifier.
//!
//! Every entry point returns a [`DhStatus`]. Results come back through out
//! pointers; certificates are opaque handles released with the matching
//! `*_free` function. Strings handed to the caller are owned by the caller and
//! must be released with [`dh_string_free`].
//!
//! On failure, [`dh_last_error_message`] returns a description of the most
//! recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dihedral_free::action::{self, find_torsion_fixed_point, Caps};
use dihedral_free::certificate::CertificateDocument;
use dihedral_free::cli::{verify_document, VerifyOptions};
use dihedral_free::construction::{verify_corollary, Construction, ConstructionParams, CorollaryCertificate, Mutation};
use dihedral_free::word::parse_word;
use dihedral_free::Error;

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    InvalidUtf8 = 4,
    CapExceeded = 5,
    BudgetExceeded = 6,
    Internal = 7,
}

/// Certificate for the order-`8n` action. Opaque.
pub struct DhTheorem {
    doc: CertificateDocument,
}

/// Certificate for an embedded `D_k`. Opaque.
pub struct DhCorollary {
    cert: CorollaryCertificate,
    doc: CertificateDocument,
}

/// Properties of one group element on `A`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DhElementReport {
    pub order: u64,
    pub is_identity: bool,
    pub is_translation: bool,
    pub has_fixed_point: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> DhStatus {
    match e {
        Error::ClosureCapExceeded { .. } | Error::OrderCapExceeded { .. } => DhStatus::CapExceeded,
        Error::OracleBudgetExceeded { .. } => DhStatus::BudgetExceeded,
        Error::Parse(_) => DhStatus::ParseError,
        Error::InvalidParameter(_) => DhStatus::InvalidArgument,
        Error::DimensionMismatch { .. } | Error::InvalidMap(_) => DhStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), DhStatus>) -> DhStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DhStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic");
            DhStatus::Internal
        }
    }
}

fn fail(e: Error) -> DhStatus {
    let status = status_of(&e);
    set_last_error(e.to_string());
    status
}

fn null(what: &str) -> DhStatus {
    set_last_error(format!("{what} is null"));
    DhStatus::NullPointer
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, DhStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_last_error(format!("{what} is not valid UTF-8"));
        DhStatus::InvalidUtf8
    })
}

fn params(n: u32) -> Result<ConstructionParams, DhStatus> {
    ConstructionParams::new(n as usize).map_err(fail)
}

fn json_out(doc: &CertificateDocument, out: *mut *mut c_char) -> Result<(), DhStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    let s = CString::new(doc.to_json()).map_err(|_| DhStatus::Internal)?;
    unsafe { *out = s.into_raw() };
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn dh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Verifies the order-`8n` action and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn dh_theorem_verify(n: u32, out: *mut *mut DhTheorem) -> DhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        params(n)?;
        let doc = verify_document(n as usize, &VerifyOptions::default()).map_err(fail)?;
        *out = Box::into_raw(Box::new(DhTheorem { doc }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`dh_theorem_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dh_theorem_free(h: *mut DhTheorem) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Whether every check passed. False for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dh_theorem_verified(h: *const DhTheorem) -> bool {
    h.as_ref().is_some_and(|h| h.doc.theorem_verified)
}

/// Size of the generated group, or 0 if it could not be computed.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dh_theorem_group_order(h: *const DhTheorem) -> u64 {
    h.as_ref().and_then(|h| h.doc.group_order).map_or(0, |g| g as u64)
}

/// Complex dimension of the torus.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dh_theorem_dimension(h: *const DhTheorem) -> u64 {
    h.as_ref().map_or(0, |h| h.doc.dimension as u64)
}

/// Whether step `step` (1 to 5) passed. False for any other index.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dh_theorem_step_passed(h: *const DhTheorem, step: u32) -> bool {
    let Some(h) = h.as_ref() else { return false };
    let key = format!("step{step}");
    h.doc.steps.get(key.as_str()).copied().unwrap_or(false)
}

/// Serializes the certificate into a new string stored in `*out`.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dh_theorem_to_json(h: *const DhTheorem, out: *mut *mut c_char) -> DhStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        json_out(&h.doc, out)
    })
}

/// Verifies the embedded action of `D_k` and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn dh_corollary_verify(k: u32, out: *mut *mut DhCorollary) -> DhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cert = verify_corollary(k as usize).map_err(fail)?;
        let doc = CertificateDocument::corollary(&cert);
        *out = Box::into_raw(Box::new(DhCorollary { cert, doc }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`dh_corollary_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dh_corollary_free(h: *mut DhCorollary) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dh_corollary_verified(h: *const DhCorollary) -> bool {
    h.as_ref().is_some_and(|h| h.cert.verified)
}

/// Order of the embedded subgroup, or 0 if it could not be computed.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dh_corollary_group_order(h: *const DhCorollary) -> u64 {
    h.as_ref().and_then(|h| h.cert.subgroup_order).map_or(0, |g| g as u64)
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dh_corollary_dimension(h: *const DhCorollary) -> u64 {
    h.as_ref().map_or(0, |h| h.cert.dimension as u64)
}

/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dh_corollary_to_json(h: *const DhCorollary, out: *mut *mut c_char) -> DhStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        json_out(&h.doc, out)
    })
}

/// Evaluates `word` (e.g. `"r^2 s"`, applied right to left) in the order-`8n`
/// action on `A` and fills `*out`.
///
/// # Safety
/// `word` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dh_element_report(n: u32, word: *const c_char, out: *mut DhElementReport) -> DhStatus {
    guard(|| {
        let text = read_str(word, "word")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = Construction::new(params(n)?, Mutation::None);
        let caps = Caps::for_rotation_order(c.params.rotation_order());
        let w = parse_word(text).map_err(|e| fail(e.into()))?;
        let g = w.evaluate(&c.r, &c.s, &c.lattice, caps.order).map_err(fail)?;
        let is_identity = g.is_identity(&c.lattice);
        *out = DhElementReport {
            order: action::order(&g, &c.lattice, caps.order).map_err(fail)? as u64,
            is_identity,
            is_translation: action::is_translation(&g, &c.lattice),
            has_fixed_point: is_identity || action::exists_fixed_point(&g, &c.lattice),
        };
        Ok(())
    })
}

/// Brute-force search for a fixed point of `word` among points of `A` with
/// coordinates in `(1/denominator)Z`. Sets `*found`.
///
/// # Safety
/// `word` must be a NUL-terminated string; `found` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dh_element_oracle(
    n: u32,
    word: *const c_char,
    denominator: u32,
    budget: u64,
    found: *mut bool,
) -> DhStatus {
    guard(|| {
        let text = read_str(word, "word")?;
        if found.is_null() {
            return Err(null("found"));
        }
        if denominator == 0 {
            set_last_error("denominator must be positive");
            return Err(DhStatus::InvalidArgument);
        }
        let c = Construction::new(params(n)?, Mutation::None);
        let caps = Caps::for_rotation_order(c.params.rotation_order());
        let w = parse_word(text).map_err(|e| fail(e.into()))?;
        let g = w.evaluate(&c.r, &c.s, &c.lattice, caps.order).map_err(fail)?;
        let hit = find_torsion_fixed_point(&g, &c.lattice, denominator as usize, budget).map_err(fail)?;
        *found = hit.is_some();
        Ok(())
    })
}
