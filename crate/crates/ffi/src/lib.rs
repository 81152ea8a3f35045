//! C ABI over `dqcalc`.
//!
//! Polynomials cross the boundary as opaque `DqPoly` handles owned by the
//! caller and released with [`dq_poly_free`]. Every fallible call returns a
//! [`DqStatus`]; on failure [`dq_last_error`] describes the most recent error
//! on the calling thread. Strings returned through out-pointers are released
//! with [`dq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dqcalc::multifactor::{egf_check, egf_pair, multi_delta, FactorList};
use dqcalc::numeric::{verify_two_factor, GridSpec, NumericFn};
use dqcalc::{apply_expansion, delta_pow, leibniz_terms, parse_poly, translation_pow, BiPoly, Error};

/// Result codes. `DQ_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidOrder = 4,
    EmptyFactorList = 5,
    NotDivisible = 6,
    LambdaContaminated = 7,
    OrderMismatch = 8,
    ZeroLambda = 9,
    SingularityInWindow = 10,
    InvalidTolerance = 11,
    InvalidGrid = 12,
    UnknownFunction = 13,
    Internal = 14,
    Panic = 15,
}

impl From<&Error> for DqStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotDivisible => DqStatus::NotDivisible,
            Error::InvalidOrder(_) => DqStatus::InvalidOrder,
            Error::LambdaContaminated => DqStatus::LambdaContaminated,
            Error::InternalDivisibilityFailure(_) => DqStatus::Internal,
            Error::OrderMismatch(..) => DqStatus::OrderMismatch,
            Error::EmptyFactorList => DqStatus::EmptyFactorList,
            Error::ZeroLambda => DqStatus::ZeroLambda,
            Error::SingularityInWindow { .. } => DqStatus::SingularityInWindow,
            Error::InvalidTolerance(_) => DqStatus::InvalidTolerance,
            Error::InvalidGrid(_) => DqStatus::InvalidGrid,
            Error::UnknownFunction(_) => DqStatus::UnknownFunction,
            Error::Parse(_) => DqStatus::Parse,
        }
    }
}

/// Opaque polynomial in `x` and `l` with rational coefficients.
pub struct DqPoly(BiPoly);

/// Outcome of a floating-point check of the two-factor rule.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DqReport {
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub cancellation_ratio: f64,
    pub trials: u64,
    pub pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(DqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(DqStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DqStatus::NullPointer, format!("{what} is null"))
}

fn guard<F>(body: F) -> DqStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| panic.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".to_owned());
        Err(Failure(DqStatus::Panic, msg))
    });
    match outcome {
        Ok(()) => {
            set_last_error("");
            DqStatus::Ok
        }
        Err(Failure(status, msg)) => {
            set_last_error(&msg);
            status
        }
    }
}

unsafe fn poly_ref<'a>(p: *const DqPoly, what: &str) -> Result<&'a BiPoly, Failure> {
    p.as_ref().map(|p| &p.0).ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(DqStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn factor_list(factors: *const *const DqPoly, n: usize) -> Result<FactorList, Failure> {
    if factors.is_null() && n > 0 {
        return Err(null("factors"));
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(poly_ref(*factors.add(i), "factor")?.clone());
    }
    Ok(FactorList::new(out)?)
}

unsafe fn emit<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_poly(out: *mut *mut DqPoly, p: BiPoly) -> Result<(), Failure> {
    emit(out, Box::into_raw(Box::new(DqPoly(p))))
}

/// Parses `src` into a new polynomial.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_poly_parse(src: *const c_char, out: *mut *mut DqPoly) -> DqStatus {
    guard(|| {
        let p = parse_poly(str_arg(src, "src")?).map_err(Error::from)?;
        emit_poly(out, p)
    })
}

/// Releases a polynomial. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dq_poly_free(p: *mut DqPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text of `p`; release with [`dq_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_poly_render(p: *const DqPoly, out: *mut *mut c_char) -> DqStatus {
    guard(|| {
        let text = poly_ref(p, "p")?.to_string();
        let c = CString::new(text).expect("rendering has no NUL");
        emit(out, c.into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `a`, `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_poly_equal(a: *const DqPoly, b: *const DqPoly, out: *mut bool) -> DqStatus {
    guard(|| emit(out, poly_ref(a, "a")? == poly_ref(b, "b")?))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_poly_add(a: *const DqPoly, b: *const DqPoly, out: *mut *mut DqPoly) -> DqStatus {
    guard(|| emit_poly(out, poly_ref(a, "a")? + poly_ref(b, "b")?))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_poly_mul(a: *const DqPoly, b: *const DqPoly, out: *mut *mut DqPoly) -> DqStatus {
    guard(|| emit_poly(out, poly_ref(a, "a")? * poly_ref(b, "b")?))
}

/// Evaluates `p` at `x`, `l` in floating point.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_poly_eval_f64(p: *const DqPoly, x: f64, l: f64, out: *mut f64) -> DqStatus {
    guard(|| emit(out, poly_ref(p, "p")?.eval_float(x, l)))
}

/// `δ^r p`; `r = 0` copies `p`.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_delta_pow(p: *const DqPoly, r: u32, out: *mut *mut DqPoly) -> DqStatus {
    guard(|| emit_poly(out, delta_pow(poly_ref(p, "p")?, r)))
}

/// `L^k p` with `L = I + lδ`.
///
/// # Safety
/// `p` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_translation_pow(p: *const DqPoly, k: u32, out: *mut *mut DqPoly) -> DqStatus {
    guard(|| emit_poly(out, translation_pow(poly_ref(p, "p")?, k)))
}

/// Two-factor closed form of `δ^r (f g)`; `r` must be positive.
///
/// # Safety
/// `f`, `g` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_leibniz_apply(
    f: *const DqPoly,
    g: *const DqPoly,
    r: u32,
    out: *mut *mut DqPoly,
) -> DqStatus {
    guard(|| {
        let e = leibniz_terms(r)?;
        emit_poly(out, apply_expansion(&e, poly_ref(f, "f")?, poly_ref(g, "g")?))
    })
}

/// Alternating-sum form of `δ^r (f_1 ... f_n)`; `r` and `n` must be positive.
///
/// # Safety
/// `factors` must point to `n` live handles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_multi_delta(
    factors: *const *const DqPoly,
    n: usize,
    r: u32,
    out: *mut *mut DqPoly,
) -> DqStatus {
    guard(|| {
        let fs = factor_list(factors, n)?;
        emit_poly(out, multi_delta(&fs, r)?)
    })
}

/// Checks the exponential generating function relation up to `order`.
///
/// # Safety
/// `factors` must point to `n` live handles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_egf_check(
    factors: *const *const DqPoly,
    n: usize,
    order: usize,
    out: *mut bool,
) -> DqStatus {
    guard(|| {
        let fs = factor_list(factors, n)?;
        let (a, abar) = egf_pair(&fs, order);
        emit(out, egf_check(&a, &abar)?)
    })
}

/// Floating-point check of the two-factor rule on `count` nodes starting at
/// `x0` with spacing `step`. `f` and `g` name catalog functions such as
/// `exp`, `sin`, `cos`, `poly(1,-2)` or `recip(3)`.
///
/// # Safety
/// `f`, `g` must be NUL-terminated strings and `out` a writable pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn dq_numeric_verify_two_factor(
    f: *const c_char,
    g: *const c_char,
    r: u32,
    lambda: f64,
    x0: f64,
    step: f64,
    count: usize,
    tol: f64,
    out: *mut DqReport,
) -> DqStatus {
    guard(|| {
        let f: NumericFn = str_arg(f, "f")?.parse()?;
        let g: NumericFn = str_arg(g, "g")?.parse()?;
        let grid = GridSpec::new(x0, step, count, lambda)?;
        let rep = verify_two_factor(&f, &g, r, &grid, tol)?;
        emit(
            out,
            DqReport {
                max_abs_err: rep.max_abs_err,
                max_rel_err: rep.max_rel_err,
                cancellation_ratio: rep.cancellation_ratio,
                trials: rep.trials,
                pass: rep.pass,
            },
        )
    })
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn dq_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}
