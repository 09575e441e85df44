use std::ffi::{CStr, CString};
use std::ptr;

use supertropical_ffi::*;

const SMALL: &str = "generators x1 x2\nmode tangibly-finite\nghostify x1^3 x2^3\nidentify x1^2 = x1*x2\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    st_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = st_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn presentation_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(st_presentation_parse(c(SMALL).as_ptr(), -1, &mut p), StStatus::Ok);
        assert!(st_last_error().is_null());

        let mut n = 0usize;
        assert_eq!(st_presentation_tangible_count(p, &mut n), StStatus::Ok);
        assert_eq!(n, 5);

        let mut s = ptr::null_mut();
        assert_eq!(st_presentation_project(p, c("x1*x2").as_ptr(), &mut s), StStatus::Ok);
        let rep = take(s);
        let mut s = ptr::null_mut();
        assert_eq!(st_presentation_project(p, c("x1^2").as_ptr(), &mut s), StStatus::Ok);
        assert_eq!(take(s), rep);

        let mut s = ptr::null_mut();
        assert_eq!(
            st_presentation_mul(p, c("x1").as_ptr(), c("x1^2").as_ptr(), &mut s),
            StStatus::Ok
        );
        assert_eq!(take(s), "c^3");

        let mut same = false;
        assert_eq!(
            st_presentation_same_fate(p, c("x1").as_ptr(), c("x1").as_ptr(), &mut same),
            StStatus::Ok
        );
        assert!(same);
        let mut uf = true;
        assert_eq!(st_presentation_has_uf(p, &mut uf), StStatus::Ok);
        assert!(!uf);
        let mut fd = false;
        assert_eq!(st_presentation_has_fate_distinction(p, &mut fd), StStatus::Ok);
        st_presentation_free(p);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut p = ptr::null_mut();
        let status = st_presentation_parse(c("generators x\nfrobnicate x\n").as_ptr(), -1, &mut p);
        assert_eq!(status, StStatus::Syntax);
        assert!(p.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(st_presentation_parse(ptr::null(), -1, &mut p), StStatus::NullPointer);
        let mut n = 0usize;
        assert_eq!(
            st_presentation_tangible_count(ptr::null(), &mut n),
            StStatus::NullPointer
        );
        assert_eq!(last_error(), "null handle");

        assert_eq!(st_presentation_parse(c(SMALL).as_ptr(), -1, &mut p), StStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(st_presentation_project(p, c("y").as_ptr(), &mut s), StStatus::Syntax);
        assert_eq!(
            st_presentation_tangible_count(p, ptr::null_mut()),
            StStatus::NullPointer
        );
        st_presentation_free(p);

        let bad = [0xffu8, 0];
        assert_eq!(
            st_presentation_parse(bad.as_ptr().cast(), -1, &mut p),
            StStatus::InvalidUtf8
        );

        st_presentation_free(ptr::null_mut());
        st_string_free(ptr::null_mut());
    }
}

#[test]
fn divisor_monoid_handle() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(
            st_divisor_new(c("t1 t2").as_ptr(), c("t1^2*t2").as_ptr(), &mut d),
            StStatus::Ok
        );
        let mut n = 0usize;
        assert_eq!(st_divisor_count(d, &mut n), StStatus::Ok);
        assert_eq!(n, 6);

        let mut s = ptr::null_mut();
        assert_eq!(st_divisor_complement(d, c("t1").as_ptr(), &mut s), StStatus::Ok);
        assert_eq!(take(s), "t1*t2");

        let mut lonely = false;
        assert_eq!(
            st_divisor_is_lonely_tyrant(d, c("t1^2*t2").as_ptr(), &mut lonely),
            StStatus::Ok
        );
        assert!(lonely);
        assert_eq!(
            st_divisor_is_lonely_tyrant(d, c("t1").as_ptr(), &mut lonely),
            StStatus::Ok
        );
        assert!(!lonely);
        assert_eq!(
            st_divisor_is_lonely_tyrant(d, c("t2^2").as_ptr(), &mut lonely),
            StStatus::Precondition
        );
        st_divisor_free(d);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/supertropical.h");
    for name in [
        "st_last_error",
        "st_string_free",
        "st_presentation_parse",
        "st_presentation_free",
        "st_divisor_new",
        "st_divisor_complement",
        "ST_STATUS_PANIC = 8",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
