//! C ABI over the spreadlab library.
//!
//! Every fallible call returns an [`SlStatus`] and writes its result through an
//! out-pointer. On failure the message is available from [`sl_last_error`]
//! until the next failing call on the same thread. Handles are opaque and must
//! be released with the matching `*_free` function; strings returned by the
//! library are released with [`sl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use spreadlab::planar::planar_verdict;
use spreadlab::quadform::DOPolyJson;
use spreadlab::spread::{
    build_even_n3, build_typec, build_typeh, even3_delta_admissible, Spread, SpreadJson,
};
use spreadlab::verify::{run_experiment, ExperimentSpec};
use spreadlab::{DOPoly, Elt, Error, FieldCtx};

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParameter = 3,
    BudgetExceeded = 4,
    NotPlanar = 5,
    NotInjective = 6,
    VerificationFailed = 7,
    UnverifiedSpread = 8,
    Inconsistent = 9,
    UnknownExperiment = 10,
    Io = 11,
    Json = 12,
    Panic = 13,
    Other = 14,
}

/// Which subfield a polynomial or element lives in.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SlFieldLevel {
    Prime = 0,
    Base = 1,
    Mid = 2,
    Ambient = 3,
}

/// Field tower handle.
pub struct SlField(Arc<FieldCtx>);

/// Spread handle.
pub struct SlSpread(Spread);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SlStatus {
    match e {
        Error::NotPrime(_)
        | Error::InvalidParameter(_)
        | Error::NotInSubfield { .. }
        | Error::EvenCharacteristic
        | Error::OddCharacteristic
        | Error::ContextMismatch
        | Error::NotDembowskiOstrom(_)
        | Error::DimensionMismatch => SlStatus::InvalidParameter,
        Error::BudgetExceeded { .. } => SlStatus::BudgetExceeded,
        Error::NotPlanar | Error::ZeroDivisors | Error::NoIdentity => SlStatus::NotPlanar,
        Error::NotInjective { .. } => SlStatus::NotInjective,
        Error::VerificationFailed(_) => SlStatus::VerificationFailed,
        Error::UnverifiedSpread => SlStatus::UnverifiedSpread,
        Error::Inconsistent(_) => SlStatus::Inconsistent,
        Error::UnknownExperiment(_) => SlStatus::UnknownExperiment,
        Error::Io(_) => SlStatus::Io,
        Error::Json(_) => SlStatus::Json,
        _ => SlStatus::Other,
    }
}

struct Fail(SlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(SlStatus::Json, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            SlStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(SlStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(SlStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(SlStatus::Other, e.to_string()))?;
    if out.is_null() {
        return Err(null());
    }
    out.write(c.into_raw());
    Ok(())
}

fn elt(ctx: &FieldCtx, x: u32) -> Result<Elt, Fail> {
    if u64::from(x) >= ctx.order() {
        return Err(Fail(
            SlStatus::InvalidParameter,
            format!("element {x} out of range for a field of order {}", ctx.order()),
        ));
    }
    Ok(Elt(x))
}

fn level(ctx: &FieldCtx, l: SlFieldLevel) -> spreadlab::Subfield {
    match l {
        SlFieldLevel::Prime => ctx.prime_field(),
        SlFieldLevel::Base => ctx.base_field(),
        SlFieldLevel::Mid => ctx.mid_field(),
        SlFieldLevel::Ambient => ctx.ambient(),
    }
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the tower F_p ⊂ F_q ⊂ F_{q^n} ⊂ F_{q^2n} with q = p^e.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_field_new(p: u64, e: u32, n: u32, out: *mut *mut SlField) -> SlStatus {
    guard(|| {
        let ctx = FieldCtx::new(p, e, n)?;
        write(out, Box::into_raw(Box::new(SlField(Arc::new(ctx)))))
    })
}

/// # Safety
/// `f` must be null or a live handle from [`sl_field_new`].
#[no_mangle]
pub unsafe extern "C" fn sl_field_free(f: *mut SlField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Order of the ambient field F_{q^2n}, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sl_field_order(f: *const SlField) -> u64 {
    f.as_ref().map_or(0, |f| f.0.order())
}

/// Size of the given subfield, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sl_field_size(f: *const SlField, l: SlFieldLevel) -> u64 {
    f.as_ref().map_or(0, |f| f.0.size(level(&f.0, l)))
}

/// Field tower description as a JSON string.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_field_to_json(f: *const SlField, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let f = deref(f)?;
        write_string(out, serde_json::to_string(&f.0.to_json())?)
    })
}

/// a + b.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_field_add(f: *const SlField, a: u32, b: u32, out: *mut u32) -> SlStatus {
    guard(|| {
        let c = &deref(f)?.0;
        write(out, c.add(elt(c, a)?, elt(c, b)?).0)
    })
}

/// a * b.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_field_mul(f: *const SlField, a: u32, b: u32, out: *mut u32) -> SlStatus {
    guard(|| {
        let c = &deref(f)?.0;
        write(out, c.mul(elt(c, a)?, elt(c, b)?).0)
    })
}

/// a^k.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_field_pow(f: *const SlField, a: u32, k: u64, out: *mut u32) -> SlStatus {
    guard(|| {
        let c = &deref(f)?.0;
        write(out, c.pow(elt(c, a)?, k).0)
    })
}

/// a^{-1}; fails on zero.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_field_inv(f: *const SlField, a: u32, out: *mut u32) -> SlStatus {
    guard(|| {
        let c = &deref(f)?.0;
        let a = elt(c, a)?;
        if a.is_zero() {
            return Err(Fail(SlStatus::InvalidParameter, "zero has no inverse".into()));
        }
        write(out, c.inv(a).0)
    })
}

/// Type-C spread: β-orbit of {x + δx^{q^i}}. Pass `delta = u32::MAX` for the
/// first admissible δ.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_typec(
    f: *const SlField,
    i: u32,
    delta: u32,
    out: *mut *mut SlSpread,
) -> SlStatus {
    guard(|| {
        let c = &deref(f)?.0;
        let d = match delta {
            u32::MAX => c.find_deltas()?[0],
            d => elt(c, d)?,
        };
        let s = build_typec(c, i, d)?;
        write(out, Box::into_raw(Box::new(SlSpread(s))))
    })
}

/// Type-H spread from two β²-orbits. `u32::MAX` selects the first admissible
/// δ or η.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_typeh(
    f: *const SlField,
    k: u32,
    delta: u32,
    eta: u32,
    out: *mut *mut SlSpread,
) -> SlStatus {
    guard(|| {
        let c = &deref(f)?.0;
        let d = match delta {
            u32::MAX => c.find_deltas()?[0],
            d => elt(c, d)?,
        };
        let eta = match eta {
            u32::MAX => *c
                .find_etas(k)?
                .first()
                .ok_or_else(|| Fail(SlStatus::InvalidParameter, "no admissible eta".into()))?,
            x => elt(c, x)?,
        };
        let s = build_typeh(c, k, d, eta)?;
        write(out, Box::into_raw(Box::new(SlSpread(s))))
    })
}

/// Even spread of F_{q^6}, q = 2^e, from {tr(x) + δx}. `u32::MAX` selects the
/// least admissible δ.
///
/// # Safety
/// `f` must be a live handle for p = 2, n = 3 and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_even3(
    f: *const SlField,
    delta: u32,
    out: *mut *mut SlSpread,
) -> SlStatus {
    guard(|| {
        let c = &deref(f)?.0;
        let d = match delta {
            u32::MAX => c
                .elements(c.ambient())
                .filter(|&d| even3_delta_admissible(c, d))
                .min()
                .ok_or_else(|| Fail(SlStatus::InvalidParameter, "no admissible delta".into()))?,
            d => elt(c, d)?,
        };
        let s = build_even_n3(c, d)?;
        write(out, Box::into_raw(Box::new(SlSpread(s))))
    })
}

/// Parses a spread from its JSON form. The result is unverified.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_from_json(json: *const c_char, out: *mut *mut SlSpread) -> SlStatus {
    guard(|| {
        let j: SpreadJson = serde_json::from_str(read_str(json)?)?;
        let s = Spread::from_json(&j)?;
        write(out, Box::into_raw(Box::new(SlSpread(s))))
    })
}

/// # Safety
/// `s` must be null or a live spread handle.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_free(s: *mut SlSpread) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Checks that the components partition the nonzero vectors.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_verify(s: *mut SlSpread, out: *mut bool) -> SlStatus {
    guard(|| {
        let s = s.as_mut().ok_or_else(null)?;
        write(out, s.0.verify()?)
    })
}

/// Number of components, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_component_count(s: *const SlSpread) -> usize {
    s.as_ref().map_or(0, |s| s.0.components().len())
}

/// Size of the kernel of a verified spread.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_kernel(s: *const SlSpread, out: *mut u64) -> SlStatus {
    guard(|| {
        let s = deref(s)?;
        let k = s.0.kernel().ok_or(Error::UnverifiedSpread)?;
        write(out, k.size)
    })
}

/// Spread as a JSON string.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_spread_to_json(s: *const SlSpread, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let s = deref(s)?;
        write_string(out, serde_json::to_string(&s.0.to_json())?)
    })
}

/// Planarity and nuclei of a DO polynomial given as JSON over the chosen
/// subfield. Writes the verdict as JSON.
///
/// # Safety
/// `f` must be a live handle, `poly` a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_planar_verdict(
    f: *const SlField,
    l: SlFieldLevel,
    poly: *const c_char,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let c = &deref(f)?.0;
        let j: DOPolyJson = serde_json::from_str(read_str(poly)?)?;
        let p = DOPoly::from_json(c, level(c, l), &j)?;
        write_string(out, serde_json::to_string(&planar_verdict(&p)?)?)
    })
}

/// Runs an experiment described by a JSON spec (at least `name`; other fields
/// default as on the command line). Writes the report JSON and the exit code:
/// 0 confirmed, 2 counterexample.
///
/// # Safety
/// `spec` must be a valid C string; `report` and `exit_code` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sl_experiment_run(
    spec: *const c_char,
    report: *mut *mut c_char,
    exit_code: *mut i32,
) -> SlStatus {
    guard(|| {
        let v: serde_json::Value = serde_json::from_str(read_str(spec)?)?;
        let name = v
            .get("name")
            .and_then(|n| n.as_str())
            .ok_or_else(|| Fail(SlStatus::InvalidParameter, "spec needs a name".into()))?;
        let mut merged = serde_json::to_value(ExperimentSpec::new(name))?;
        if let (Some(m), Some(o)) = (merged.as_object_mut(), v.as_object()) {
            for (k, x) in o {
                m.insert(k.clone(), x.clone());
            }
        }
        let spec: ExperimentSpec = serde_json::from_value(merged)?;
        let r = run_experiment(&spec)?;
        write(exit_code, r.exit_code())?;
        write_string(report, serde_json::to_string(&r)?)
    })
}
