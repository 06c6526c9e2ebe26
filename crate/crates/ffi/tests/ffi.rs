use std::ffi::{CStr, CString};
use std::ptr;

use h2zeeman_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(h2z_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn angular_functions() {
    let mut x = f64::NAN;
    unsafe {
        assert_eq!(h2z_wigner_6j(1, 2, 1, 3, 2, 3, &mut x), H2zStatus::Ok);
        assert!((x - 10f64.sqrt() / 12.0).abs() < 1e-15);
        assert_eq!(h2z_wigner_6j(2, 2, 2, 2, 2, 9, &mut x), H2zStatus::Ok);
        assert_eq!(x, 0.0);
        assert_eq!(h2z_wigner_3j(2, 2, 0, 0, 0, 0, &mut x), H2zStatus::Ok);
        assert!((x + 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(h2z_clebsch_gordan(1, 1, 2, 0, 1, 1, &mut x), H2zStatus::Ok);
        assert!((x - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(h2z_wigner_6j(1, 1, 1, 1, 1, 1, ptr::null_mut()), H2zStatus::NullPointer);
    }
}

#[test]
fn model_lifecycle_and_g_factors() {
    let model = h2z_model_new_default();
    let mut g = H2zGFactor::default();
    unsafe {
        assert_eq!(h2z_g_factor(model, 0, 0, 1, 1, &mut g), H2zStatus::Ok);
        assert_eq!(g.total, 2.002_319_304_36);
        assert_eq!(h2z_g_factor(model, 0, 1, 1, 1, &mut g), H2zStatus::Ok);
        assert!(g.mixed);
        assert!((g.total - 0.126_538_1).abs() < 2e-6);
        assert_eq!(h2z_g_factor(model, 0, 1, 1, 5, &mut g), H2zStatus::Domain);
        assert!(last_error().contains("F=1/2, J=5/2"));
        assert_eq!(h2z_g_factor(model, 9, 2, 1, 5, &mut g), H2zStatus::DataMissing);

        let mut x = 0.0;
        assert_eq!(h2z_g_rot(model, 0, 1, &mut x), H2zStatus::Ok);
        assert!((x - 0.9201).abs() < 2e-4);
        assert_eq!(h2z_g_rot(model, 0, 0, &mut x), H2zStatus::Domain);
        assert_eq!(h2z_g_rot(ptr::null(), 0, 1, &mut x), H2zStatus::NullPointer);
        h2z_model_free(model);
        h2z_model_free(ptr::null_mut());
    }
}

#[test]
fn zeeman_functions() {
    let model = h2z_model_new_default();
    let mut x = 0.0;
    unsafe {
        assert_eq!(h2z_sigma_shift(model, 0, 1, 1, 3, 5, 5e-5, &mut x), H2zStatus::Ok);
        assert!((x - 279_258.0).abs() < 2.0);
        assert_eq!(h2z_pi_splitting(model, 0, 1, 1, 3, 5, 5e-5, &mut x), H2zStatus::Ok);
        assert!((x - 3.5).abs() < 0.3);
        assert_eq!(
            h2z_sigma_shift(model, 0, 1, 1, 1, 1, 5e-5, &mut x),
            H2zStatus::Forbidden
        );
        assert_eq!(
            h2z_sigma_shift(model, 0, 1, 1, 3, 5, -1.0, &mut x),
            H2zStatus::Validation
        );
        h2z_model_free(model);
    }
}

#[test]
fn loading_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let constants = dir.path().join("constants.toml");
    std::fs::write(&constants, "g_e = 2.0\n").unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "g_e = \"two\"\n").unwrap();
    let c_path = CString::new(constants.to_str().unwrap()).unwrap();
    let bad_path = CString::new(bad.to_str().unwrap()).unwrap();
    let missing = CString::new(dir.path().join("nope.csv").to_str().unwrap()).unwrap();

    let mut model = ptr::null_mut();
    unsafe {
        assert_eq!(
            h2z_model_load(c_path.as_ptr(), ptr::null(), ptr::null(), false, &mut model),
            H2zStatus::Ok
        );
        let mut g = H2zGFactor::default();
        assert_eq!(h2z_g_factor(model, 0, 0, 1, 1, &mut g), H2zStatus::Ok);
        assert_eq!(g.total, 2.0);
        h2z_model_free(model);

        let mut other = ptr::null_mut();
        assert_eq!(
            h2z_model_load(bad_path.as_ptr(), ptr::null(), ptr::null(), false, &mut other),
            H2zStatus::Parse
        );
        assert!(other.is_null());
        assert_eq!(
            h2z_model_load(ptr::null(), missing.as_ptr(), ptr::null(), false, &mut other),
            H2zStatus::Io
        );
    }
}

#[test]
fn status_messages() {
    let text = |code: i32| {
        unsafe { CStr::from_ptr(h2z_status_message(code)) }
            .to_str()
            .unwrap()
            .to_owned()
    };
    assert_eq!(text(H2zStatus::Ok as i32), "ok");
    assert_eq!(
        text(H2zStatus::Forbidden as i32),
        "transition forbidden for this polarization"
    );
    assert_eq!(text(99), "unknown status");
}
