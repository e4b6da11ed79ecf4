//! C ABI over `oddzeta`.
//!
//! Every fallible call returns an [`OzStatus`]; on failure a message is
//! available from [`oz_last_error_message`] on the same thread. Objects are
//! opaque handles released with their matching `_free` function, and every
//! string handed out must be released with [`oz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use oddzeta::cli::to_json;
use oddzeta::expansion::p_poly;
use oddzeta::reference::{digamma_mikolas, digamma_ref};
use oddzeta::zetarep::{lemma_check, zeta_odd};
use oddzeta::{Accuracy, BigReal, Error, PiPoly, Representation, ZetaComputation};

/// Status codes. The first four match the exit codes of the `oddzeta`
/// command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OzStatus {
    Ok = 0,
    Domain = 1,
    NoConvergence = 2,
    VerificationFailed = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OzRepresentation {
    Theorem = 0,
    Corollary = 1,
    CkEuler = 2,
    CkBernoulli = 3,
}

impl From<OzRepresentation> for Representation {
    fn from(r: OzRepresentation) -> Self {
        match r {
            OzRepresentation::Theorem => Representation::Theorem,
            OzRepresentation::Corollary => Representation::Corollary,
            OzRepresentation::CkEuler => Representation::CkEuler,
            OzRepresentation::CkBernoulli => Representation::CkBernoulli,
        }
    }
}

/// The polynomial 𝒫₂ₚ(t) with exact coefficients.
pub struct OzPoly {
    poly: PiPoly,
}

/// One evaluated ζ(2p+1) with its reference value and diagnostics.
pub struct OzZetaResult {
    inner: ZetaComputation,
    digits: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> OzStatus {
    match e {
        Error::NoConvergence(_) => OzStatus::NoConvergence,
        Error::LemmaViolation { .. } => OzStatus::VerificationFailed,
        _ => OzStatus::Domain,
    }
}

fn fail(e: Error) -> OzStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

/// Runs `f`, turning panics into [`OzStatus::Panic`].
fn guard(f: impl FnOnce() -> OzStatus) -> OzStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            OzStatus::Panic
        }
    }
}

fn give_string(s: String, out: *mut *mut c_char) -> OzStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before calling.
            unsafe { *out = c.into_raw() };
            OzStatus::Ok
        }
        Err(_) => {
            set_error("string contains an interior NUL");
            OzStatus::InvalidUtf8
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, OzStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(OzStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        OzStatus::InvalidUtf8
    })
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)));
            return OzStatus::NullPointer;
        })+
    };
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn oz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn oz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds 𝒫₂ₚ for p ≥ 1.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn oz_poly_new(p: u32, out: *mut *mut OzPoly) -> OzStatus {
    guard(|| {
        non_null!(out);
        match p_poly(p) {
            Ok(poly) => {
                *out = Box::into_raw(Box::new(OzPoly { poly }));
                OzStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `poly` must be null or a handle from [`oz_poly_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oz_poly_free(poly: *mut OzPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Number of nonzero terms, or 0 for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oz_poly_term_count(poly: *const OzPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.poly.len())
}

/// Plain-text rendering.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oz_poly_to_text(poly: *const OzPoly, out: *mut *mut c_char) -> OzStatus {
    guard(|| {
        non_null!(poly, out);
        give_string((*poly).poly.to_text(), out)
    })
}

/// LaTeX rendering.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oz_poly_to_latex(poly: *const OzPoly, out: *mut *mut c_char) -> OzStatus {
    guard(|| {
        non_null!(poly, out);
        give_string((*poly).poly.to_latex(), out)
    })
}

/// JSON list of `{t_exp, pi_exp, num, den}` records.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oz_poly_to_json(poly: *const OzPoly, out: *mut *mut c_char) -> OzStatus {
    guard(|| {
        non_null!(poly, out);
        give_string(to_json(&(*poly).poly.to_records()), out)
    })
}

/// Evaluates the polynomial at `t` to `digits` significant digits and
/// returns the decimal string.
///
/// # Safety
/// `poly` must be a live handle, `t` a NUL-terminated decimal string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oz_poly_eval(
    poly: *const OzPoly,
    t: *const c_char,
    digits: u32,
    out: *mut *mut c_char,
) -> OzStatus {
    guard(|| {
        non_null!(poly, out);
        let t = match read_str(t) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let bits = Accuracy::from_digits(digits.max(1)).bits();
        let Some(tv) = BigReal::parse(t, bits) else {
            set_error(format!("cannot parse `{t}` as a number"));
            return OzStatus::Domain;
        };
        give_string((*poly).poly.eval(&tv, bits).to_decimal(digits.max(1) as usize), out)
    })
}

/// Checks ∫₀¹ 𝒫₂ₚ(t)·sin(πt) dt = −1/π in exact arithmetic.
#[no_mangle]
pub extern "C" fn oz_lemma_check(p: u32) -> OzStatus {
    guard(|| match lemma_check(p) {
        Ok(_) => OzStatus::Ok,
        Err(e) => fail(e),
    })
}

/// Computes ζ(2p+1) to `digits` digits (10 to 10000).
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn oz_zeta_odd(
    p: u32,
    rep: OzRepresentation,
    digits: u32,
    out: *mut *mut OzZetaResult,
) -> OzStatus {
    guard(|| {
        non_null!(out);
        if !(10..=10000).contains(&digits) {
            set_error("digits must be between 10 and 10000");
            return OzStatus::Domain;
        }
        match zeta_odd(p, rep.into(), &Accuracy::from_digits(digits)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(OzZetaResult { inner, digits }));
                OzStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `r` must be null or a handle from [`oz_zeta_odd`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oz_zeta_result_free(r: *mut OzZetaResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// The computed value as a decimal string.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oz_zeta_result_value(
    r: *const OzZetaResult,
    out: *mut *mut c_char,
) -> OzStatus {
    guard(|| {
        non_null!(r, out);
        let r = &*r;
        give_string(r.inner.value.to_decimal(r.digits as usize), out)
    })
}

/// The independently computed reference value as a decimal string.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oz_zeta_result_reference(
    r: *const OzZetaResult,
    out: *mut *mut c_char,
) -> OzStatus {
    guard(|| {
        non_null!(r, out);
        let r = &*r;
        give_string(r.inner.reference.to_decimal(r.digits as usize), out)
    })
}

/// |value − reference| in scientific notation.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oz_zeta_result_abs_error(
    r: *const OzZetaResult,
    out: *mut *mut c_char,
) -> OzStatus {
    guard(|| {
        non_null!(r, out);
        give_string((*r).inner.abs_error().to_scientific(3), out)
    })
}

/// Integrand evaluations used, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oz_zeta_result_evaluations(r: *const OzZetaResult) -> usize {
    r.as_ref().map_or(0, |r| r.inner.quad.evaluations)
}

/// ψ(z) for 0 < z < 1 by the tan-weighted integral. `z` is a decimal or a
/// fraction such as `1/3`. Optionally writes the reference value too.
///
/// # Safety
/// `z` must be a NUL-terminated string, `out` a valid pointer, and
/// `reference_out` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oz_digamma(
    z: *const c_char,
    digits: u32,
    out: *mut *mut c_char,
    reference_out: *mut *mut c_char,
) -> OzStatus {
    guard(|| {
        non_null!(out);
        let z = match read_str(z) {
            Ok(s) => s,
            Err(s) => return s,
        };
        if !(10..=10000).contains(&digits) {
            set_error("digits must be between 10 and 10000");
            return OzStatus::Domain;
        }
        let acc = Accuracy::from_digits(digits);
        let Some(q) = oddzeta::exactnum::parse_rational(z) else {
            set_error(format!("cannot parse z = `{z}`"));
            return OzStatus::Domain;
        };
        let zv = BigReal::from_rational(&q, acc.bits());
        let value = match digamma_mikolas(&zv, &acc) {
            Ok(v) => v.value,
            Err(e) => return fail(e),
        };
        if !reference_out.is_null() {
            match digamma_ref(&zv, acc.bits()) {
                Ok(r) => {
                    let s = give_string(r.to_decimal(digits as usize), reference_out);
                    if s != OzStatus::Ok {
                        return s;
                    }
                }
                Err(e) => return fail(e),
            }
        }
        give_string(value.to_decimal(digits as usize), out)
    })
}
