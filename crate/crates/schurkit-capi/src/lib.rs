//! C ABI for schurkit.
//!
//! All functions return an `SkStatus` code; results are written through out
//! parameters. Groups are opaque handles owned by the library; strings
//! returned through `char **` are heap-allocated and must be released with
//! `sk_string_free`. A thread-local message for the most recent failure is
//! available via `sk_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use schurkit::error::SchurkitError;
use schurkit::PcGroup;

/// Status codes returned by every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SkStatus {
    SkOk = 0,
    SkErrParse = 1,
    SkErrInconsistent = 2,
    SkErrUnknownCatalog = 3,
    SkErrInvalid = 4,
    SkErrBudget = 5,
    SkErrResource = 6,
    SkErrNullArgument = 7,
    SkErrUtf8 = 8,
    SkErrUnknownLemma = 9,
}

/// Opaque handle to a validated polycyclic group.
pub struct SkGroup {
    inner: PcGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(e: &SchurkitError) -> SkStatus {
    let msg = CString::new(e.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
    match e {
        SchurkitError::Parse { .. } => SkStatus::SkErrParse,
        SchurkitError::Inconsistent { .. } => SkStatus::SkErrInconsistent,
        SchurkitError::UnknownCatalog(_) => SkStatus::SkErrUnknownCatalog,
        SchurkitError::BudgetExceeded(_) => SkStatus::SkErrBudget,
        SchurkitError::ResourceLimit(_) => SkStatus::SkErrResource,
        SchurkitError::UnknownLemma(_) => SkStatus::SkErrUnknownLemma,
        _ => SkStatus::SkErrInvalid,
    }
}

fn invalid(msg: &str) -> SkStatus {
    fail(&SchurkitError::Invalid(msg.to_string()))
}

/// Message for the most recent failure on this thread. Valid until the next
/// failing call; do not free.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SkStatus> {
    if ptr.is_null() {
        return Err(SkStatus::SkErrNullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| SkStatus::SkErrUtf8)
}

fn write_group(out: *mut *mut SkGroup, g: PcGroup) -> SkStatus {
    if out.is_null() {
        return SkStatus::SkErrNullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(SkGroup { inner: g })) };
    SkStatus::SkOk
}

fn write_string(out: *mut *mut c_char, s: String) -> SkStatus {
    if out.is_null() {
        return SkStatus::SkErrNullArgument;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SkStatus::SkOk
        }
        Err(_) => invalid("result contains an interior NUL byte"),
    }
}

/// Parse and validate a PC-FILE; on success `*out` owns the group.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_group_parse(
    text: *const c_char,
    out: *mut *mut SkGroup,
) -> SkStatus {
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match schurkit::pcp::parse_pc_presentation(text).and_then(PcGroup::new) {
        Ok(g) => write_group(out, g),
        Err(e) => fail(&e),
    }
}

/// Resolve a `catalog:` URI (e.g. `catalog:heisenberg_mod:3`).
///
/// # Safety
/// `uri` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_group_from_catalog(
    uri: *const c_char,
    out: *mut *mut SkGroup,
) -> SkStatus {
    let uri = match read_str(uri) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match schurkit::catalog::resolve_catalog_uri(uri).and_then(PcGroup::new) {
        Ok(g) => write_group(out, g),
        Err(e) => fail(&e),
    }
}

/// Release a group handle. Passing NULL is a no-op.
///
/// # Safety
/// `g` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sk_group_free(g: *mut SkGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Group order, written to `*out`.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_group_order(g: *const SkGroup, out: *mut u64) -> SkStatus {
    if g.is_null() || out.is_null() {
        return SkStatus::SkErrNullArgument;
    }
    let order = (*g).inner.order();
    if order > u64::MAX as u128 {
        return invalid("order exceeds 64 bits");
    }
    *out = order as u64;
    SkStatus::SkOk
}

/// Full structure report as a JSON string in `*out`.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_group_structure_json(
    g: *const SkGroup,
    out: *mut *mut c_char,
) -> SkStatus {
    if g.is_null() {
        return SkStatus::SkErrNullArgument;
    }
    match (*g).inner.structure() {
        Ok(st) => match serde_json::to_string_pretty(&st.report()) {
            Ok(s) => write_string(out, s),
            Err(e) => fail(&SchurkitError::from(e)),
        },
        Err(e) => fail(&e),
    }
}

/// Tensor-square summary (orders, exponents, multiplier invariants) as JSON.
/// `budget` caps live cosets; pass 0 for the library default. `extended`
/// widens the order envelope for ν(G).
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_tensor_square_json(
    g: *const SkGroup,
    budget: u64,
    extended: bool,
    out: *mut *mut c_char,
) -> SkStatus {
    if g.is_null() {
        return SkStatus::SkErrNullArgument;
    }
    let budget = if budget == 0 {
        schurkit::tensor::DEFAULT_BUDGET
    } else {
        budget
    };
    match schurkit::tensor::tensor_square(&(*g).inner, budget, extended) {
        Ok(r) => match serde_json::to_string_pretty(&r) {
            Ok(s) => write_string(out, s),
            Err(e) => fail(&SchurkitError::from(e)),
        },
        Err(e) => fail(&e),
    }
}

/// Verify a built-in identity (`"4.1"`, `"4.2i"`, ...) at its default sample
/// points; the verification report is returned as JSON and `*all_equal` says
/// whether every point checked out.
///
/// # Safety
/// `lemma` must be a NUL-terminated string; `out` and `all_equal` valid.
#[no_mangle]
pub unsafe extern "C" fn sk_verify_identity_json(
    lemma: *const c_char,
    out: *mut *mut c_char,
    all_equal: *mut bool,
) -> SkStatus {
    let lemma = match read_str(lemma) {
        Ok(t) => t,
        Err(s) => return s,
    };
    if all_equal.is_null() {
        return SkStatus::SkErrNullArgument;
    }
    let result = schurkit::template::builtin_template(lemma).and_then(|t| {
        let points = t.default_sample_points();
        schurkit::template::verify_identity(&t, &points)
    });
    match result {
        Ok(r) => {
            *all_equal = r.equal;
            match serde_json::to_string_pretty(&r) {
                Ok(s) => write_string(out, s),
                Err(e) => fail(&SchurkitError::from(e)),
            }
        }
        Err(e) => fail(&e),
    }
}

/// Release a string returned by this library. Passing NULL is a no-op.
///
/// # Safety
/// `s` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn catalog_round_trip() {
        let uri = CString::new("catalog:heisenberg_mod:3").unwrap();
        let mut g: *mut SkGroup = ptr::null_mut();
        unsafe {
            assert!(sk_group_from_catalog(uri.as_ptr(), &mut g) == SkStatus::SkOk);
            let mut order = 0u64;
            assert!(sk_group_order(g, &mut order) == SkStatus::SkOk);
            assert_eq!(order, 27);
            let mut json: *mut c_char = ptr::null_mut();
            assert!(sk_group_structure_json(g, &mut json) == SkStatus::SkOk);
            let text = CStr::from_ptr(json).to_str().unwrap();
            assert!(text.contains("\"nilpotency_class\": 2"));
            sk_string_free(json);
            sk_group_free(g);
        }
    }

    #[test]
    fn parse_rejects_garbage_with_message() {
        let text = CString::new("gens zero;").unwrap();
        let mut g: *mut SkGroup = ptr::null_mut();
        unsafe {
            assert!(sk_group_parse(text.as_ptr(), &mut g) == SkStatus::SkErrParse);
            assert!(g.is_null());
            let msg = CStr::from_ptr(sk_last_error()).to_str().unwrap();
            assert!(msg.contains("parse error"), "{msg}");
        }
    }

    #[test]
    fn tensor_budget_error_code() {
        let uri = CString::new("catalog:abelian:2,2").unwrap();
        let mut g: *mut SkGroup = ptr::null_mut();
        unsafe {
            assert!(sk_group_from_catalog(uri.as_ptr(), &mut g) == SkStatus::SkOk);
            let mut json: *mut c_char = ptr::null_mut();
            assert!(sk_tensor_square_json(g, 3, false, &mut json) == SkStatus::SkErrBudget);
            assert!(sk_tensor_square_json(g, 0, false, &mut json) == SkStatus::SkOk);
            let text = CStr::from_ptr(json).to_str().unwrap();
            assert!(text.contains("\"nu_order\": 256"));
            sk_string_free(json);
            sk_group_free(g);
        }
    }

    #[test]
    fn identity_verification_through_ffi() {
        let lemma = CString::new("1.1iii").unwrap();
        let mut json: *mut c_char = ptr::null_mut();
        let mut equal = false;
        unsafe {
            assert!(sk_verify_identity_json(lemma.as_ptr(), &mut json, &mut equal) == SkStatus::SkOk);
            assert!(equal);
            sk_string_free(json);
            let bogus = CString::new("9.9").unwrap();
            assert!(
                sk_verify_identity_json(bogus.as_ptr(), &mut json, &mut equal)
                    == SkStatus::SkErrUnknownLemma
            );
        }
    }
}
