//! C ABI for `bifib`.
//!
//! Polynomials cross the boundary as opaque `BifibPoly` handles owned by the
//! caller (release with `bifib_poly_free`). Strings returned through `out`
//! parameters are heap-allocated and must be released with
//! `bifib_string_free`. Every fallible call returns a `BifibStatus`; on
//! failure `bifib_last_error` describes the most recent error on the calling
//! thread. Panics never unwind across the boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bifib::derivatives::derivative;
use bifib::verifier::{self, Interval, SweepOptions};
use bifib::{DerivMethod, Error, LaurentBiPoly, RationalValue, Wrt};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BifibStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfDomain = 4,
    Unsupported = 5,
    InexactDivision = 6,
    EvalAtPole = 7,
    UnknownIdentity = 8,
    EmptyRange = 9,
    /// Any other library error.
    Failed = 10,
    /// A panic was caught; the library state is still usable.
    Internal = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BifibWrt {
    X = 0,
    Y = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BifibMethod {
    Direct = 0,
    ClosedForm = 1,
    Convolution = 2,
    AltSum = 3,
    Rational = 4,
    RthRecurrence = 5,
}

/// Opaque polynomial handle.
pub struct BifibPoly(LaurentBiPoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(BifibStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => BifibStatus::Parse,
            Error::NegativeExponent(_) | Error::OutOfDomain { .. } | Error::SingularPrefactor { .. } => {
                BifibStatus::OutOfDomain
            }
            Error::UnsupportedMethod { .. } => BifibStatus::Unsupported,
            Error::InexactDivision { .. } | Error::NonDivisible { .. } => BifibStatus::InexactDivision,
            Error::EvalAtPole | Error::DivisionByZero => BifibStatus::EvalAtPole,
            Error::UnknownIdentity(_) => BifibStatus::UnknownIdentity,
            Error::EmptyRange(_) => BifibStatus::EmptyRange,
            _ => BifibStatus::Failed,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BifibStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BifibStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            BifibStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BifibStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BifibStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn poly_arg<'a>(p: *const BifibPoly, name: &str) -> Result<&'a LaurentBiPoly, Fail> {
    p.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Fail(BifibStatus::NullPointer, format!("{name} is null")))
}

unsafe fn put_poly(out: *mut *mut BifibPoly, p: LaurentBiPoly) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BifibStatus::NullPointer, "out is null".into()));
    }
    *out = Box::into_raw(Box::new(BifibPoly(p)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BifibStatus::NullPointer, "out is null".into()));
    }
    *out = CString::new(s).expect("no interior NUL").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn bifib_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bifib_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a polynomial handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bifib_poly_free(p: *mut BifibPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `F_n`; any integer index.
#[no_mangle]
pub unsafe extern "C" fn bifib_fib(n: i64, out: *mut *mut BifibPoly) -> BifibStatus {
    guard(|| put_poly(out, bifib::fib(n)))
}

/// `L_n`; any integer index.
#[no_mangle]
pub unsafe extern "C" fn bifib_lucas(n: i64, out: *mut *mut BifibPoly) -> BifibStatus {
    guard(|| put_poly(out, bifib::lucas(n)))
}

/// `d^r F_n / d(wrt)^r` by the chosen construction.
#[no_mangle]
pub unsafe extern "C" fn bifib_derivative(
    n: i64,
    r: u32,
    wrt: BifibWrt,
    method: BifibMethod,
    out: *mut *mut BifibPoly,
) -> BifibStatus {
    guard(|| {
        let wrt = match wrt {
            BifibWrt::X => Wrt::X,
            BifibWrt::Y => Wrt::Y,
        };
        let method = match method {
            BifibMethod::Direct => DerivMethod::Direct,
            BifibMethod::ClosedForm => DerivMethod::ClosedForm,
            BifibMethod::Convolution => DerivMethod::Convolution,
            BifibMethod::AltSum => DerivMethod::AltSum,
            BifibMethod::Rational => DerivMethod::Rational,
            BifibMethod::RthRecurrence => DerivMethod::RthRecurrence,
        };
        put_poly(out, derivative(n, r, wrt, method)?)
    })
}

/// Parses the canonical JSON form `{"terms":[{"ex":..,"ey":..,"c":".."}]}`.
#[no_mangle]
pub unsafe extern "C" fn bifib_poly_from_json(json: *const c_char, out: *mut *mut BifibPoly) -> BifibStatus {
    guard(|| {
        let p = LaurentBiPoly::from_json(str_arg(json, "json")?)?;
        put_poly(out, p)
    })
}

#[no_mangle]
pub unsafe extern "C" fn bifib_poly_clone(p: *const BifibPoly, out: *mut *mut BifibPoly) -> BifibStatus {
    guard(|| put_poly(out, poly_arg(p, "p")?.clone()))
}

#[no_mangle]
pub unsafe extern "C" fn bifib_poly_add(
    a: *const BifibPoly,
    b: *const BifibPoly,
    out: *mut *mut BifibPoly,
) -> BifibStatus {
    guard(|| put_poly(out, poly_arg(a, "a")? + poly_arg(b, "b")?))
}

#[no_mangle]
pub unsafe extern "C" fn bifib_poly_sub(
    a: *const BifibPoly,
    b: *const BifibPoly,
    out: *mut *mut BifibPoly,
) -> BifibStatus {
    guard(|| put_poly(out, poly_arg(a, "a")? - poly_arg(b, "b")?))
}

#[no_mangle]
pub unsafe extern "C" fn bifib_poly_mul(
    a: *const BifibPoly,
    b: *const BifibPoly,
    out: *mut *mut BifibPoly,
) -> BifibStatus {
    guard(|| put_poly(out, poly_arg(a, "a")? * poly_arg(b, "b")?))
}

/// Exact division; fails with `InexactDivision` if a remainder is left.
#[no_mangle]
pub unsafe extern "C" fn bifib_poly_div_exact(
    a: *const BifibPoly,
    d: *const BifibPoly,
    out: *mut *mut BifibPoly,
) -> BifibStatus {
    guard(|| put_poly(out, poly_arg(a, "a")?.div_exact(poly_arg(d, "d")?)?))
}

/// Partial derivative of a polynomial, `order` times.
#[no_mangle]
pub unsafe extern "C" fn bifib_poly_diff(
    p: *const BifibPoly,
    wrt: BifibWrt,
    order: u32,
    out: *mut *mut BifibPoly,
) -> BifibStatus {
    guard(|| {
        let p = poly_arg(p, "p")?;
        let d = match wrt {
            BifibWrt::X => p.diff_x_n(order),
            BifibWrt::Y => p.diff_y_n(order),
        };
        put_poly(out, d)
    })
}

/// 1 if equal, 0 if not, -1 if either handle is null.
#[no_mangle]
pub unsafe extern "C" fn bifib_poly_equal(a: *const BifibPoly, b: *const BifibPoly) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => c_int::from(a.0 == b.0),
        _ => -1,
    }
}

/// Number of nonzero terms, or -1 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn bifib_poly_term_count(p: *const BifibPoly) -> i64 {
    p.as_ref().map_or(-1, |p| p.0.len() as i64)
}

#[no_mangle]
pub unsafe extern "C" fn bifib_poly_to_text(p: *const BifibPoly, out: *mut *mut c_char) -> BifibStatus {
    guard(|| put_string(out, poly_arg(p, "p")?.to_text()))
}

#[no_mangle]
pub unsafe extern "C" fn bifib_poly_to_latex(p: *const BifibPoly, out: *mut *mut c_char) -> BifibStatus {
    guard(|| put_string(out, poly_arg(p, "p")?.to_latex()))
}

#[no_mangle]
pub unsafe extern "C" fn bifib_poly_to_json(p: *const BifibPoly, out: *mut *mut c_char) -> BifibStatus {
    guard(|| put_string(out, poly_arg(p, "p")?.to_json()))
}

/// Evaluates at rationals given as `"p"` or `"p/q"`; the result is written
/// in the same form.
#[no_mangle]
pub unsafe extern "C" fn bifib_poly_eval(
    p: *const BifibPoly,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> BifibStatus {
    guard(|| {
        let p = poly_arg(p, "p")?;
        let x: RationalValue = str_arg(x, "x")?.parse()?;
        let y: RationalValue = str_arg(y, "y")?.parse()?;
        put_string(out, p.eval(&x, &y)?.to_string())
    })
}

/// Runs the verifier and writes its JSON report. `id` may be `"all"`, in
/// which case the output is an array. `r_range` may be null.
#[no_mangle]
pub unsafe extern "C" fn bifib_verify(
    id: *const c_char,
    n_range: *const c_char,
    r_range: *const c_char,
    all_counterexamples: bool,
    out: *mut *mut c_char,
) -> BifibStatus {
    guard(|| {
        let id = str_arg(id, "id")?;
        let n: Interval = str_arg(n_range, "n_range")?.parse()?;
        let r: Option<Interval> = if r_range.is_null() {
            None
        } else {
            Some(str_arg(r_range, "r_range")?.parse()?)
        };
        let opts = SweepOptions { all_counterexamples };
        let json = if id == "all" {
            if n.is_empty() {
                return Err(Error::EmptyRange(format!("n = {n}")).into());
            }
            let items: Vec<String> = verifier::verify_all(n, r, opts).iter().map(|r| r.to_json()).collect();
            format!("[{}]", items.join(","))
        } else {
            verifier::verify(id, n, r, opts)?.to_json()
        };
        put_string(out, json)
    })
}

/// Errata report as JSON.
#[no_mangle]
pub unsafe extern "C" fn bifib_errata(out: *mut *mut c_char) -> BifibStatus {
    guard(|| put_string(out, verifier::errata_report(SweepOptions::default()).to_json()))
}
