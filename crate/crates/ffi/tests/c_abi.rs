use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use oddzeta_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    oz_string_free(s);
    out
}

#[test]
fn poly_handle_lifecycle() {
    unsafe {
        let mut poly = ptr::null_mut();
        assert_eq!(oz_poly_new(2, &mut poly), OzStatus::Ok);
        assert_eq!(oz_poly_term_count(poly), 3);

        let mut s = ptr::null_mut();
        assert_eq!(oz_poly_to_text(poly, &mut s), OzStatus::Ok);
        assert_eq!(take(s), "-pi^4/360 * (3*t^5 - 10*t^3 + 7*t)");

        assert_eq!(oz_poly_to_json(poly, &mut s), OzStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(json.as_array().unwrap().len(), 3);

        // −π⁴/360·(3/32 − 5/4 + 7/2)
        let t = CString::new("0.5").unwrap();
        assert_eq!(oz_poly_eval(poly, t.as_ptr(), 20, &mut s), OzStatus::Ok);
        assert!(take(s).starts_with("-0.6341737697526200340"));
        oz_poly_free(poly);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut poly = ptr::null_mut();
        assert_eq!(oz_poly_new(0, &mut poly), OzStatus::Domain);
        assert!(poly.is_null());
        let msg = CStr::from_ptr(oz_last_error_message()).to_str().unwrap();
        assert!(msg.contains("p must be"), "{msg}");

        assert_eq!(oz_poly_new(1, ptr::null_mut()), OzStatus::NullPointer);
        assert_eq!(oz_poly_to_text(ptr::null(), ptr::null_mut()), OzStatus::NullPointer);

        let mut s = ptr::null_mut();
        let z = CString::new("1.5").unwrap();
        assert_eq!(oz_digamma(z.as_ptr(), 20, &mut s, ptr::null_mut()), OzStatus::Domain);
        let bad = CString::new("abc").unwrap();
        assert_eq!(oz_digamma(bad.as_ptr(), 20, &mut s, ptr::null_mut()), OzStatus::Domain);

        let mut r = ptr::null_mut();
        assert_eq!(oz_zeta_odd(1, OzRepresentation::Theorem, 5, &mut r), OzStatus::Domain);

        // a successful call clears the message
        assert_eq!(oz_lemma_check(3), OzStatus::Ok);
        assert!(oz_last_error_message().is_null());
    }
}

#[test]
fn zeta_and_digamma_values() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(oz_zeta_odd(2, OzRepresentation::CkBernoulli, 30, &mut r), OzStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(oz_zeta_result_value(r, &mut s), OzStatus::Ok);
        let value = take(s);
        assert_eq!(oz_zeta_result_reference(r, &mut s), OzStatus::Ok);
        let reference = take(s);
        assert_eq!(value[..24], reference[..24]);
        assert!(oz_zeta_result_evaluations(r) > 0);
        assert_eq!(oz_zeta_result_abs_error(r, &mut s), OzStatus::Ok);
        assert!(take(s).contains('e'));
        oz_zeta_result_free(r);

        let z = CString::new("1/2").unwrap();
        let mut reference = ptr::null_mut();
        assert_eq!(oz_digamma(z.as_ptr(), 25, &mut s, &mut reference), OzStatus::Ok);
        let (a, b) = (take(s), take(reference));
        assert_eq!(a[..20], b[..20]);
        assert!(a.starts_with("-1.96351002602142347944"));
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/oddzeta.h")).unwrap();
    for name in [
        "typedef struct OzPoly OzPoly;",
        "typedef struct OzZetaResult OzZetaResult;",
        "OZ_STATUS_NO_CONVERGENCE = 2",
        "oz_poly_new(uint32_t p, struct OzPoly **out)",
        "oz_last_error_message(void)",
        "void oz_string_free(char *s);",
    ] {
        assert!(header.contains(name), "missing `{name}`");
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = target_dir().join("liboddzeta_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let manifest = env!("CARGO_MANIFEST_DIR");
    let status = Command::new("cc")
        .arg(format!("{manifest}/tests/smoke.c"))
        .arg(format!("-I{manifest}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("zeta(3) = 1.20205690315959428"));
}
