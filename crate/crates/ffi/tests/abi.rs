use std::ffi::{c_char, CStr};
use std::ptr;

use selberg_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { selberg_last_error(buf.as_mut_ptr(), buf.len()) };
    let s = unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_str()
        .unwrap()
        .to_owned();
    assert_eq!(s.len(), n.min(255));
    s
}

fn close(a: SelbergComplex, re: f64, im: f64, tol: f64) -> bool {
    ((a.re - re).powi(2) + (a.im - im).powi(2)).sqrt() <= tol * (re * re + im * im).sqrt().max(1.0)
}

#[test]
fn classical_value_matches_known_case() {
    let mut v = SelbergComplex { re: 0.0, im: 0.0 };
    assert_eq!(
        unsafe { selberg_classical(1.0, 1.0, 1.0, 2, &mut v) },
        SelbergStatus::Ok
    );
    assert!(close(v, 1.0 / 12.0, 0.0, 1e-14), "{v:?}");
}

#[test]
fn channel_round_trip_and_agreement_with_loop_beta() {
    let (a, kappa) = (0.37, 4.3);
    let mut ch = ptr::null_mut();
    let mut p = ptr::null_mut();
    let idx = [1usize, 2, 1];
    let pairings = [-a * kappa];
    unsafe {
        assert_eq!(
            selberg_channel_new(idx.as_ptr(), idx.len(), 1, &mut ch),
            SelbergStatus::Ok
        );
        assert_eq!(
            selberg_params_new(pairings.as_ptr(), 1, kappa, &mut p),
            SelbergStatus::Ok
        );
        let mut g = SelbergComplex { re: 0.0, im: 0.0 };
        assert_eq!(selberg_generalized(ch, p, &mut g), SelbergStatus::Ok);
        let mut b = g;
        let arg = |x: f64| SelbergComplex { re: x, im: 0.0 };
        assert_eq!(
            selberg_contour_beta(arg(a), arg(1.0 - 3.0 / kappa), &mut b),
            SelbergStatus::Ok
        );
        assert!(close(g, b.re, b.im, 1e-12), "{g:?} vs {b:?}");
        selberg_channel_free(ch);
        selberg_params_free(p);
    }
}

#[test]
fn monomial_exponent_of_level_two_pair() {
    let (a, kappa) = (0.41, 5.0);
    let (mut ch, mut p) = (ptr::null_mut(), ptr::null_mut());
    let mut v = SelbergComplex { re: 0.0, im: 0.0 };
    unsafe {
        assert_eq!(
            selberg_channel_new([2usize, 2].as_ptr(), 2, 1, &mut ch),
            SelbergStatus::Ok
        );
        assert_eq!(
            selberg_params_new([-a * kappa].as_ptr(), 1, kappa, &mut p),
            SelbergStatus::Ok
        );
        assert_eq!(selberg_monomial_exponent(ch, p, &mut v), SelbergStatus::Ok);
        selberg_channel_free(ch);
        selberg_params_free(p);
    }
    assert!(close(v, a - 1.0 / kappa, 0.0, 1e-14), "{v:?}");
}

#[test]
fn errors_map_to_codes_and_messages() {
    let mut ch = ptr::null_mut();
    let bad = [3usize];
    assert_eq!(
        unsafe { selberg_channel_new(bad.as_ptr(), 1, 1, &mut ch) },
        SelbergStatus::InvalidChannel
    );
    assert!(ch.is_null());
    assert!(!last_error().is_empty());

    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { selberg_params_new(ptr::null(), 2, 3.0, &mut p) },
        SelbergStatus::NullPointer
    );
    assert!(last_error().contains("pairings"));

    let mut v = SelbergComplex { re: 0.0, im: 0.0 };
    let pole = SelbergComplex { re: -1.0, im: 0.0 };
    let status = unsafe { selberg_contour_beta(pole, pole, &mut v) };
    assert_ne!(status, SelbergStatus::Ok);
    assert_eq!(
        unsafe { selberg_generalized(ptr::null(), ptr::null(), &mut v) },
        SelbergStatus::NullPointer
    );
    assert_eq!(
        unsafe { selberg_classical(1.0, 1.0, 1.0, 2, ptr::null_mut()) },
        SelbergStatus::NullPointer
    );
}

#[test]
fn status_names_are_static_strings() {
    for s in [
        SelbergStatus::Ok,
        SelbergStatus::NonGeneric,
        SelbergStatus::Panic,
    ] {
        let name = unsafe { CStr::from_ptr(selberg_status_name(s)) };
        assert!(!name.to_bytes().is_empty());
    }
    unsafe {
        selberg_channel_free(ptr::null_mut());
        selberg_params_free(ptr::null_mut());
        assert_eq!(
            selberg_last_error(ptr::null_mut(), 0),
            selberg_last_error(ptr::null_mut(), 0)
        );
    }
}
