//! C interface over `hwsg`.
//!
//! Objects are opaque handles created by `*_new` functions and released with
//! the matching `*_free`. Every function returns an [`HwsgStatus`]; on
//! failure, `hwsg_last_error_message` describes the error on the calling
//! thread. Output arrays use a caller buffer plus capacity: the required
//! length is always written, and `HWSG_STATUS_BUFFER_TOO_SMALL` is returned
//! when it exceeds the capacity.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use hwsg::gluing::{detect_complete_intersection, detect_free};
use hwsg::hw::{check_two_generated, is_huneke_wiegand, HWReport};
use hwsg::sequences::find_irreducible_two_step;
use hwsg::{Error, NumericalSemigroup, RelativeIdeal, Verdict};

/// Opaque numerical semigroup.
pub struct HwsgSemigroup(Arc<NumericalSemigroup>);

/// Opaque relative ideal.
pub struct HwsgIdeal(RelativeIdeal);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HwsgStatus {
    Ok = 0,
    NullPointer = 1,
    BufferTooSmall = 2,
    EmptyGenerators = 3,
    NonPositiveGenerator = 4,
    NotCoprime = 5,
    TooLarge = 6,
    NotAGap = 7,
    ModulusNotInSemigroup = 8,
    AmbientMismatch = 9,
    HypothesisViolated = 10,
    BoundInsufficient = 11,
    InvalidArgument = 12,
    Internal = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HwsgVerdict {
    Principal = 0,
    Hw = 1,
    NotHw = 2,
}

/// Outcome of a Huneke-Wiegand check.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct HwsgHwResult {
    pub verdict: HwsgVerdict,
    /// Set when `verdict` is `HWSG_VERDICT_HW`.
    pub has_witness: bool,
    pub witness_element: i64,
    pub checked_partitions: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HwsgStatus {
    match e {
        Error::EmptyGenerators => HwsgStatus::EmptyGenerators,
        Error::NonPositiveGenerator(_) => HwsgStatus::NonPositiveGenerator,
        Error::NotCoprime { .. } => HwsgStatus::NotCoprime,
        Error::TooLarge { .. } => HwsgStatus::TooLarge,
        Error::NotAGap(_) | Error::StepInSemigroup(_) => HwsgStatus::NotAGap,
        Error::ModulusNotInSemigroup(_) => HwsgStatus::ModulusNotInSemigroup,
        Error::AmbientMismatch => HwsgStatus::AmbientMismatch,
        Error::HypothesisViolated(_) | Error::NotSymmetric => HwsgStatus::HypothesisViolated,
        Error::BoundInsufficient { .. } => HwsgStatus::BoundInsufficient,
        Error::InternalInconsistency(_) | Error::NonStabilized { .. } | Error::CaseExhausted(_) => HwsgStatus::Internal,
        _ => HwsgStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), HwsgStatus>) -> HwsgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HwsgStatus::Ok,
        Ok(Err(status)) => status,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            HwsgStatus::Panic
        }
    }
}

fn fail(e: Error) -> HwsgStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> HwsgStatus {
    set_error(format!("{what} is null"));
    HwsgStatus::NullPointer
}

unsafe fn slice<'a>(data: *const i64, len: usize) -> Result<&'a [i64], HwsgStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("input array"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, HwsgStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), HwsgStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_array(values: &[i64], buf: *mut i64, cap: usize, len: *mut usize) -> Result<(), HwsgStatus> {
    write(len, values.len())?;
    if values.len() > cap {
        set_error(format!("buffer holds {cap} values, {} needed", values.len()));
        return Err(HwsgStatus::BufferTooSmall);
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("output buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

fn hw_result(r: &HWReport) -> HwsgHwResult {
    HwsgHwResult {
        verdict: match r.verdict {
            Verdict::Principal => HwsgVerdict::Principal,
            Verdict::HW => HwsgVerdict::Hw,
            Verdict::NotHW => HwsgVerdict::NotHw,
        },
        has_witness: r.witness_element.is_some(),
        witness_element: r.witness_element.unwrap_or(0),
        checked_partitions: r.checked_partitions,
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hwsg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the semigroup generated by `gens[0..len]`.
///
/// # Safety
/// `gens` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_new(gens: *const i64, len: usize, out: *mut *mut HwsgSemigroup) -> HwsgStatus {
    guard(|| {
        let g = slice(gens, len)?;
        let s = NumericalSemigroup::from_generators(g).map_err(fail)?;
        write(out, Box::into_raw(Box::new(HwsgSemigroup(Arc::new(s)))))
    })
}

/// # Safety
/// `s` must come from `hwsg_semigroup_new` and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_free(s: *mut HwsgSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_frobenius(s: *const HwsgSemigroup, out: *mut i64) -> HwsgStatus {
    guard(|| write(out, deref(s, "semigroup")?.0.frobenius()))
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_genus(s: *const HwsgSemigroup, out: *mut u64) -> HwsgStatus {
    guard(|| write(out, deref(s, "semigroup")?.0.genus()))
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_is_symmetric(s: *const HwsgSemigroup, out: *mut bool) -> HwsgStatus {
    guard(|| write(out, deref(s, "semigroup")?.0.is_symmetric().map_err(fail)?))
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_contains(s: *const HwsgSemigroup, x: i64, out: *mut bool) -> HwsgStatus {
    guard(|| write(out, deref(s, "semigroup")?.0.contains(x)))
}

/// Minimal generators, increasing.
///
/// # Safety
/// `s` must be a live handle, `buf` must hold `cap` values, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_generators(
    s: *const HwsgSemigroup,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> HwsgStatus {
    guard(|| write_array(deref(s, "semigroup")?.0.generators(), buf, cap, len))
}

/// Apéry set with respect to `z`, increasing.
///
/// # Safety
/// As for `hwsg_semigroup_generators`.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_apery(
    s: *const HwsgSemigroup,
    z: i64,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> HwsgStatus {
    guard(|| {
        let ap = deref(s, "semigroup")?.0.apery(z).map_err(fail)?;
        write_array(ap.elements(), buf, cap, len)
    })
}

/// JSON summary of the semigroup; release it with `hwsg_string_free`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_semigroup_to_json(s: *const HwsgSemigroup, out: *mut *mut c_char) -> HwsgStatus {
    guard(|| {
        let text = serde_json::to_string(&*deref(s, "semigroup")?.0).map_err(|e| fail(Error::InternalInconsistency(e.to_string())))?;
        let c = CString::new(text).map_err(|e| fail(Error::InternalInconsistency(e.to_string())))?;
        write(out, c.into_raw())
    })
}

/// # Safety
/// `text` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn hwsg_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Fails with `HWSG_STATUS_NOT_A_GAP` unless `step` is a positive gap.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_two_generated(s: *const HwsgSemigroup, step: i64, out: *mut HwsgHwResult) -> HwsgStatus {
    guard(|| {
        let r = check_two_generated(&deref(s, "semigroup")?.0, step).map_err(fail)?;
        write(out, hw_result(&r))
    })
}

/// Smallest `x <= bound` with `(x, x+step, x+2 step)` irreducible. A negative
/// `bound` selects the default bound.
///
/// # Safety
/// `s` must be a live handle; `found` and `x` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_find_irreducible(
    s: *const HwsgSemigroup,
    step: i64,
    bound: i64,
    found: *mut bool,
    x: *mut i64,
) -> HwsgStatus {
    guard(|| {
        let bound = (bound >= 0).then_some(bound);
        let r = find_irreducible_two_step(&deref(s, "semigroup")?.0, step, bound).map_err(fail)?;
        write(found, r.found)?;
        write(x, r.x.unwrap_or(-1))
    })
}

/// # Safety
/// `s` must be a live handle; `is_free` and `is_ci` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_classify(s: *const HwsgSemigroup, is_free: *mut bool, is_ci: *mut bool) -> HwsgStatus {
    guard(|| {
        let s = &deref(s, "semigroup")?.0;
        write(is_free, detect_free(s).is_some())?;
        write(is_ci, detect_complete_intersection(s).is_some())
    })
}

/// The ideal generated by `gens[0..len]` over `s`.
///
/// # Safety
/// `s` must be a live handle, `gens` readable for `len` values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_ideal_new(
    s: *const HwsgSemigroup,
    gens: *const i64,
    len: usize,
    out: *mut *mut HwsgIdeal,
) -> HwsgStatus {
    guard(|| {
        let s = deref(s, "semigroup")?;
        let a = RelativeIdeal::from_generators(&s.0, slice(gens, len)?).map_err(fail)?;
        write(out, Box::into_raw(Box::new(HwsgIdeal(a))))
    })
}

/// # Safety
/// `a` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hwsg_ideal_free(a: *mut HwsgIdeal) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// As for `hwsg_semigroup_generators`.
#[no_mangle]
pub unsafe extern "C" fn hwsg_ideal_generators(a: *const HwsgIdeal, buf: *mut i64, cap: usize, len: *mut usize) -> HwsgStatus {
    guard(|| write_array(deref(a, "ideal")?.0.generators(), buf, cap, len))
}

/// The dual `S - A`, as a new handle.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_ideal_dual(a: *const HwsgIdeal, out: *mut *mut HwsgIdeal) -> HwsgStatus {
    guard(|| {
        let d = deref(a, "ideal")?.0.dual();
        write(out, Box::into_raw(Box::new(HwsgIdeal(d))))
    })
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hwsg_ideal_check_hw(a: *const HwsgIdeal, out: *mut HwsgHwResult) -> HwsgStatus {
    guard(|| write(out, hw_result(&is_huneke_wiegand(&deref(a, "ideal")?.0))))
}
