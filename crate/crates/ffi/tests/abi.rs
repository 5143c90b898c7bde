use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use quartic_lines_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    ql_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(ql_last_error()).to_str().unwrap().to_owned()
}

unsafe fn surface(q: &str, field: &str) -> *mut QlSurface {
    let mut s = ptr::null_mut();
    assert_eq!(ql_surface_new(c(q).as_ptr(), c(field).as_ptr(), &mut s), QlStatus::Ok);
    assert!(!s.is_null());
    s
}

const SCHUR: &str = "x1^4 - x1*x2^3 - x3^4 + x3*x4^3";

#[test]
fn schur_census_through_the_abi() {
    unsafe {
        let s = surface(SCHUR, "F 13");
        let mut cen = ptr::null_mut();
        assert_eq!(ql_census(s, &mut cen), QlStatus::Ok);
        let mut n = 0usize;
        assert_eq!(ql_census_count(cen, &mut n), QlStatus::Ok);
        assert_eq!(n, 64);
        assert_eq!(ql_census_line_count(cen), 64);
        let mut p = ptr::null_mut();
        assert_eq!(ql_census_line(cen, 0, &mut p), QlStatus::Ok);
        assert_eq!(take(p).split(", ").count(), 6);
        assert_eq!(ql_census_line(cen, 64, &mut p), QlStatus::OutOfRange);
        assert!(last_error().contains("64"));
        assert_eq!(ql_census_json(cen, &mut p), QlStatus::Ok);
        assert!(take(p).contains("\"count\": 64"));
        ql_census_free(cen);
        ql_surface_free(s);
    }
}

#[test]
fn census_over_q_has_count_but_no_lines() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ql_surface_new(c(SCHUR).as_ptr(), ptr::null(), &mut s), QlStatus::Ok);
        let mut cen = ptr::null_mut();
        assert_eq!(ql_census(s, &mut cen), QlStatus::Ok);
        let mut n = 0usize;
        assert_eq!(ql_census_count(cen, &mut n), QlStatus::Ok);
        assert_eq!(n, 64);
        assert_eq!(ql_census_line_count(cen), 0);
        ql_census_free(cen);
        ql_surface_free(s);
    }
}

#[test]
fn fibration_and_classification_json() {
    let z = "x3*x1^3 + x4*x2^3 + x1*x2*(-x3^2 - 5*x3*x4 + 19*x4^2) + 4*x3^4 + 17*x3^3*x4 \
             - 5*x3^2*x4^2 - 4*x3*x4^3 + 18*x4^4";
    unsafe {
        let s = surface(z, "F 31");
        let line = c("x3 = x4 = 0");
        let mut p = ptr::null_mut();
        assert_eq!(ql_fibration_json(s, line.as_ptr(), &mut p), QlStatus::Ok);
        let j = take(p);
        assert!(j.contains("\"N\": 18"), "{j}");
        assert!(j.contains("\"R\": \"2^2\""));
        assert_eq!(ql_classify_line_json(s, line.as_ptr(), &mut p), QlStatus::Ok);
        assert!(take(p).contains("\"second\""));
        let off = c("x1 = x2 = 0");
        assert_eq!(ql_fibration_json(s, off.as_ptr(), &mut p), QlStatus::LineNotOnSurface);
        ql_surface_free(s);
    }
}

#[test]
fn graph_json() {
    unsafe {
        let s = surface(SCHUR, "F 13");
        assert_eq!(ql_surface_configure(s, 4, 2, 1), QlStatus::Ok);
        let mut p = ptr::null_mut();
        assert_eq!(ql_graph_json(s, 0, &mut p), QlStatus::Ok);
        assert!(take(p).contains("\"count\": 64"));
        ql_surface_free(s);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ql_surface_new(c("x1^3").as_ptr(), ptr::null(), &mut s), QlStatus::Parse);
        assert!(s.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            ql_surface_new(c(SCHUR).as_ptr(), c("F 12").as_ptr(), &mut s),
            QlStatus::InvalidField
        );
        assert_eq!(ql_surface_new(ptr::null(), ptr::null(), &mut s), QlStatus::NullPointer);
        assert_eq!(
            ql_surface_new(c(SCHUR).as_ptr(), ptr::null(), ptr::null_mut()),
            QlStatus::NullPointer
        );
        let mut cen = ptr::null_mut();
        assert_eq!(ql_census(ptr::null(), &mut cen), QlStatus::NullPointer);
        let mut n = 0;
        assert_eq!(ql_census_count(ptr::null(), &mut n), QlStatus::NullPointer);
        ql_surface_free(ptr::null_mut());
        ql_census_free(ptr::null_mut());
        ql_string_free(ptr::null_mut());
    }
}

#[test]
fn too_many_lines_is_a_finding() {
    unsafe {
        let s = surface("x1^4 + x2^4 + x3^4", "F 101");
        let mut cen = ptr::null_mut();
        assert_eq!(ql_census(s, &mut cen), QlStatus::Finding);
        ql_surface_free(s);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(ql_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
