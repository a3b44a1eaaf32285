use std::ffi::{CStr, CString};
use std::ptr;

use bifib_ffi::*;

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    bifib_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(bifib_last_error()).to_str().unwrap().to_owned()
}

unsafe fn fib(n: i64) -> *mut BifibPoly {
    let mut p = ptr::null_mut();
    assert_eq!(bifib_fib(n, &mut p), BifibStatus::Ok);
    p
}

#[test]
fn generate_render_free() {
    unsafe {
        let p = fib(5);
        let mut s = ptr::null_mut();
        assert_eq!(bifib_poly_to_text(p, &mut s), BifibStatus::Ok);
        assert_eq!(take_string(s), "x^4 + 3x^2 y + y^2");
        assert_eq!(bifib_poly_to_latex(p, &mut s), BifibStatus::Ok);
        assert_eq!(take_string(s), "x^{4}+3x^{2}y+y^{2}");
        assert_eq!(bifib_poly_term_count(p), 3);
        assert_eq!(last_error(), "");
        bifib_poly_free(p);
        bifib_poly_free(ptr::null_mut());
        bifib_string_free(ptr::null_mut());
    }
}

#[test]
fn json_round_trip_through_handles() {
    unsafe {
        let p = fib(-9);
        let mut s = ptr::null_mut();
        assert_eq!(bifib_poly_to_json(p, &mut s), BifibStatus::Ok);
        let json = CString::new(take_string(s)).unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(bifib_poly_from_json(json.as_ptr(), &mut q), BifibStatus::Ok);
        assert_eq!(bifib_poly_equal(p, q), 1);
        assert_eq!(bifib_poly_equal(p, ptr::null()), -1);
        bifib_poly_free(p);
        bifib_poly_free(q);

        let bad = CString::new("{\"terms\":[{\"ex\":0,\"ey\":0,\"c\":\"0\"}]}").unwrap();
        assert_eq!(bifib_poly_from_json(bad.as_ptr(), &mut q), BifibStatus::Parse);
        assert!(!last_error().is_empty());
    }
}

#[test]
fn arithmetic_and_derivatives() {
    unsafe {
        // L_n = F_{n+1} + y F_{n-1}
        let (f7, f5) = (fib(7), fib(5));
        let y = CString::new("{\"terms\":[{\"ex\":0,\"ey\":1,\"c\":\"1\"}]}").unwrap();
        let (mut yp, mut prod, mut sum, mut l6) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(bifib_poly_from_json(y.as_ptr(), &mut yp), BifibStatus::Ok);
        assert_eq!(bifib_poly_mul(yp, f5, &mut prod), BifibStatus::Ok);
        assert_eq!(bifib_poly_add(f7, prod, &mut sum), BifibStatus::Ok);
        assert_eq!(bifib_lucas(6, &mut l6), BifibStatus::Ok);
        assert_eq!(bifib_poly_equal(sum, l6), 1);

        let mut back = ptr::null_mut();
        assert_eq!(bifib_poly_div_exact(prod, f5, &mut back), BifibStatus::Ok);
        assert_eq!(bifib_poly_equal(back, yp), 1);
        let mut none = ptr::null_mut();
        assert_eq!(bifib_poly_div_exact(f7, f5, &mut none), BifibStatus::InexactDivision);
        assert!(none.is_null());

        let (mut d1, mut d2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(bifib_derivative(9, 1, BifibWrt::X, BifibMethod::Convolution, &mut d1), BifibStatus::Ok);
        let f9 = fib(9);
        assert_eq!(bifib_poly_diff(f9, BifibWrt::X, 1, &mut d2), BifibStatus::Ok);
        assert_eq!(bifib_poly_equal(d1, d2), 1);
        assert_eq!(
            bifib_derivative(9, 1, BifibWrt::Y, BifibMethod::Rational, &mut none),
            BifibStatus::Unsupported
        );

        for p in [f7, f5, yp, prod, sum, l6, back, d1, d2, f9] {
            bifib_poly_free(p);
        }
    }
}

#[test]
fn evaluation() {
    unsafe {
        let p = fib(-1);
        let (x, y, y0) = (CString::new("1").unwrap(), CString::new("2").unwrap(), CString::new("0").unwrap());
        let mut s = ptr::null_mut();
        assert_eq!(bifib_poly_eval(p, x.as_ptr(), y.as_ptr(), &mut s), BifibStatus::Ok);
        assert_eq!(take_string(s), "1/2");
        assert_eq!(bifib_poly_eval(p, x.as_ptr(), y0.as_ptr(), &mut s), BifibStatus::EvalAtPole);
        assert_eq!(bifib_poly_eval(p, ptr::null(), y.as_ptr(), &mut s), BifibStatus::NullPointer);
        assert_eq!(bifib_poly_eval(ptr::null(), x.as_ptr(), y.as_ptr(), &mut s), BifibStatus::NullPointer);
        bifib_poly_free(p);
    }
}

#[test]
fn verifier_reports() {
    unsafe {
        let (id, n) = (CString::new("cor2.printed").unwrap(), CString::new("1..20").unwrap());
        let mut s = ptr::null_mut();
        assert_eq!(bifib_verify(id.as_ptr(), n.as_ptr(), ptr::null(), false, &mut s), BifibStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["counterexample"]["n"], 5);

        let (all, r) = (CString::new("all").unwrap(), CString::new("1..2").unwrap());
        assert_eq!(bifib_verify(all.as_ptr(), n.as_ptr(), r.as_ptr(), false, &mut s), BifibStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), bifib::verifier::catalog().len());

        let unknown = CString::new("eq0.0").unwrap();
        assert_eq!(
            bifib_verify(unknown.as_ptr(), n.as_ptr(), ptr::null(), false, &mut s),
            BifibStatus::UnknownIdentity
        );
        let empty = CString::new("5..1").unwrap();
        assert_eq!(bifib_verify(id.as_ptr(), empty.as_ptr(), ptr::null(), false, &mut s), BifibStatus::EmptyRange);

        assert_eq!(bifib_errata(&mut s), BifibStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["entries"].as_array().unwrap().len(), 3);
    }
}
