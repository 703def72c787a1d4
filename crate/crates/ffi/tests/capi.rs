use std::ffi::{CStr, CString};
use std::ptr;

use gradedpi_ffi::*;

fn last_error() -> String {
    let p = gp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn catalog(id: &str) -> *mut GpAlgebra {
    let id = CString::new(id).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { gp_algebra_from_catalog(id.as_ptr(), &mut a) },
        GpStatus::Ok
    );
    a
}

#[test]
fn catalog_spec_round_trip() {
    let a = catalog("m2-4");
    assert_eq!(unsafe { gp_algebra_dim(a) }, 4);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { gp_algebra_to_spec(a, &mut text) }, GpStatus::Ok);
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { gp_algebra_from_spec(text, &mut b) }, GpStatus::Ok);
    assert_eq!(unsafe { gp_algebra_dim(b) }, 4);
    unsafe {
        gp_string_free(text);
        gp_algebra_free(a);
        gp_algebra_free(b);
    }
}

#[test]
fn status_codes() {
    let mut a = ptr::null_mut();
    let bad = CString::new("pauli(0)").unwrap();
    assert_eq!(
        unsafe { gp_algebra_from_catalog(bad.as_ptr(), &mut a) },
        GpStatus::Precondition
    );
    assert!(last_error().contains("n ≥ 2"));
    assert_eq!(
        unsafe { gp_algebra_from_catalog(ptr::null(), &mut a) },
        GpStatus::NullPointer
    );
    let junk = CString::new("format gradedpi-algebra 1\nbogus\n").unwrap();
    assert_eq!(
        unsafe { gp_algebra_from_spec(junk.as_ptr(), &mut a) },
        GpStatus::ParseError
    );
    assert!(last_error().contains("line 2"));
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { gp_algebra_from_catalog(invalid.as_ptr().cast(), &mut a) },
        GpStatus::InvalidUtf8
    );
    assert_eq!(unsafe { gp_algebra_dim(ptr::null()) }, 0);
}

#[test]
fn verify_and_report() {
    let a = catalog("m2-elem");
    let basis = CString::new("dv-lemma").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { gp_verify(a, basis.as_ptr(), GpMode::Identities, 3, &mut r) },
        GpStatus::Ok
    );
    assert!(unsafe { gp_report_passed(r) });
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { gp_report_to_json(r, &mut json) }, GpStatus::Ok);
    let s = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    assert!(s.contains("\"passed\": true"));
    unsafe {
        gp_string_free(json);
        gp_report_free(r);
    }
    // the central basis used as an identity basis is refused
    let central = CString::new("bp-central").unwrap();
    assert_eq!(
        unsafe { gp_verify(a, central.as_ptr(), GpMode::Identities, 3, &mut r) },
        GpStatus::Precondition
    );
    assert!(r.is_null());
    unsafe { gp_algebra_free(a) };
}

#[test]
fn failing_verification_still_returns_a_report() {
    // the literal corollary family misses x1:e*x2:a^2 - x2:a^2*x1:e
    let a = catalog("m2c-z4");
    let basis = CString::new("corollary-literal").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { gp_verify(a, basis.as_ptr(), GpMode::Identities, 2, &mut r) },
        GpStatus::VerificationFailed
    );
    assert!(!r.is_null());
    assert!(!unsafe { gp_report_passed(r) });
    unsafe {
        gp_report_free(r);
        gp_algebra_free(a);
    }
}

#[test]
fn identity_query() {
    let a = catalog("m2-elem");
    let mut holds = false;
    let p = CString::new("x1:e*x2:e - x2:e*x1:e").unwrap();
    assert_eq!(
        unsafe { gp_is_identity(a, p.as_ptr(), &mut holds) },
        GpStatus::Ok
    );
    assert!(holds);
    let q = CString::new("x1:a*x2:a - x2:a*x1:a").unwrap();
    assert_eq!(
        unsafe { gp_is_identity(a, q.as_ptr(), &mut holds) },
        GpStatus::Ok
    );
    assert!(!holds);
    let bad = CString::new("x1:q").unwrap();
    assert_ne!(
        unsafe { gp_is_identity(a, bad.as_ptr(), &mut holds) },
        GpStatus::Ok
    );
    unsafe { gp_algebra_free(a) };
}
