use std::ffi::{c_char, CString};
use std::ptr;

use stalab_ffi::*;

fn parse(text: &str) -> *mut StaMultivector {
    let s = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sta_mv_parse(s.as_ptr(), &mut out) }, StaStatus::Ok);
    out
}

fn coeffs(mv: *const StaMultivector) -> [f64; 16] {
    let mut c = [0.0; 16];
    assert_eq!(unsafe { sta_mv_coeffs(mv, c.as_mut_ptr()) }, StaStatus::Ok);
    c
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { sta_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&b| b as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn gamma_anticommutation_through_handles() {
    let (g1, g2) = (parse("g1"), parse("g2"));
    let (mut ab, mut ba, mut sum) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(sta_mv_gp(g1, g2, &mut ab), StaStatus::Ok);
        assert_eq!(sta_mv_gp(g2, g1, &mut ba), StaStatus::Ok);
        assert_eq!(sta_mv_add(ab, ba, &mut sum), StaStatus::Ok);
    }
    assert_eq!(coeffs(sum), [0.0; 16]);
    let mut sq = ptr::null_mut();
    unsafe { sta_mv_gp(g1, g1, &mut sq) };
    assert_eq!(coeffs(sq)[0], -1.0);
    for h in [g1, g2, ab, ba, sum, sq] {
        unsafe { sta_mv_free(h) };
    }
}

#[test]
fn coefficient_round_trip_and_format() {
    let c: [f64; 16] = std::array::from_fn(|i| i as f64 - 7.5);
    let mv = unsafe { sta_mv_from_coeffs(c.as_ptr()) };
    assert_eq!(coeffs(mv), c);

    let mut needed = 0;
    assert_eq!(unsafe { sta_mv_format(mv, ptr::null_mut(), 0, &mut needed) }, StaStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    assert_eq!(unsafe { sta_mv_format(mv, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) }, StaStatus::Ok);
    let back = unsafe { std::ffi::CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_owned();
    let reparsed = parse(&back);
    assert_eq!(coeffs(reparsed), c);
    unsafe {
        sta_mv_free(mv);
        sta_mv_free(reparsed);
    }
}

#[test]
fn reverse_grade_and_wedge() {
    let a = parse("1 + 2 g0 + 3 g12 + 4 g012 + 5 g0123");
    let (mut r, mut g2, mut w) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(sta_mv_reverse(a, &mut r), StaStatus::Ok);
        assert_eq!(sta_mv_grade(a, 2, &mut g2), StaStatus::Ok);
        assert_eq!(sta_mv_grade(a, 5, &mut w), StaStatus::InvalidArgument);
    }
    let rc = coeffs(r);
    assert_eq!((rc[0], rc[1], rc[8], rc[11], rc[15]), (1.0, 2.0, -3.0, -4.0, 5.0));
    assert_eq!(coeffs(g2)[8], 3.0);
    assert_eq!(coeffs(g2).iter().filter(|&&x| x != 0.0).count(), 1);

    let (x, y) = (parse("g0"), parse("g1"));
    unsafe { assert_eq!(sta_mv_wedge(x, y, &mut w), StaStatus::Ok) };
    assert_eq!(coeffs(w)[5], 1.0);
    for h in [a, r, g2, w, x, y] {
        unsafe { sta_mv_free(h) };
    }
}

#[test]
fn exponential_of_a_rotation_plane() {
    let b = parse("0.5 g12");
    let mut e = ptr::null_mut();
    unsafe { assert_eq!(sta_mv_exp_biform(b, &mut e), StaStatus::Ok) };
    let c = coeffs(e);
    assert!((c[0] - 0.5f64.cos()).abs() < 1e-15 && (c[8] - 0.5f64.sin()).abs() < 1e-15);

    let v = parse("g1");
    let mut bad = ptr::null_mut();
    unsafe { assert_eq!(sta_mv_exp_biform(v, &mut bad), StaStatus::Domain) };
    assert!(bad.is_null());
    assert!(last_error().contains("bivector"));
    unsafe {
        sta_mv_free(b);
        sta_mv_free(e);
        sta_mv_free(v);
    }
}

#[test]
fn versor_inverse() {
    let a = parse("1 + 0.3 g01");
    let mut inv = ptr::null_mut();
    let mut prod = ptr::null_mut();
    unsafe {
        assert_eq!(sta_mv_versor_inverse(a, &mut inv), StaStatus::Ok);
        sta_mv_gp(a, inv, &mut prod);
    }
    let c = coeffs(prod);
    assert!((c[0] - 1.0).abs() < 1e-14 && c[1..].iter().all(|x| x.abs() < 1e-14));
    let zero = sta_mv_zero();
    let mut none = ptr::null_mut();
    unsafe { assert_eq!(sta_mv_versor_inverse(zero, &mut none), StaStatus::Domain) };
    for h in [a, inv, prod, zero] {
        unsafe { sta_mv_free(h) };
    }
}

#[test]
fn decompose_scaled_duality_phase() {
    // 2·e^{γ⁵·0.2}·e^{0.3 γ¹²}: ρ = 4, β = 0.4.
    let (s, c) = (0.2f64.sin_cos(), 0.3f64.sin_cos());
    let phase = unsafe {
        sta_mv_from_coeffs([2.0 * s.1, 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 2.0 * s.0].as_ptr())
    };
    let rot =
        unsafe { sta_mv_from_coeffs([c.1, 0., 0., 0., 0., 0., 0., 0., c.0, 0., 0., 0., 0., 0., 0., 0.].as_ptr()) };
    let mut psi = ptr::null_mut();
    unsafe { sta_mv_gp(phase, rot, &mut psi) };
    let mut f = StaFactors::default();
    assert_eq!(unsafe { sta_mv_decompose(psi, &mut f) }, StaStatus::Ok);
    assert!((f.rho - 4.0).abs() < 1e-13);
    assert!((f.beta - 0.4).abs() < 1e-13);
    assert!((f.rotor[0] - c.1).abs() < 1e-13 && (f.rotor[4] - c.0).abs() < 1e-13);

    let odd = parse("1 + g0");
    assert_eq!(unsafe { sta_mv_decompose(odd, &mut f) }, StaStatus::InvalidArgument);
    for h in [phase, rot, psi, odd] {
        unsafe { sta_mv_free(h) };
    }
}

#[test]
fn null_and_malformed_inputs() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(sta_mv_gp(ptr::null(), ptr::null(), &mut out), StaStatus::NullPointer);
        assert!(sta_mv_from_coeffs(ptr::null()).is_null());
        sta_mv_free(ptr::null_mut());
    }
    let s = CString::new("1 + 2 g5").unwrap();
    assert_eq!(unsafe { sta_mv_parse(s.as_ptr(), &mut out) }, StaStatus::Parse);
    assert!(!last_error().is_empty());
    // Truncation keeps the NUL and reports the full length.
    let mut tiny = [1 as c_char; 4];
    let n = unsafe { sta_last_error(tiny.as_mut_ptr(), tiny.len()) };
    assert!(n > 3);
    assert_eq!(tiny[3], 0);
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/stalab.h")).unwrap();
    for name in [
        "sta_last_error",
        "sta_mv_zero",
        "sta_mv_from_coeffs",
        "sta_mv_parse",
        "sta_mv_free",
        "sta_mv_coeffs",
        "sta_mv_format",
        "sta_mv_gp",
        "sta_mv_wedge",
        "sta_mv_add",
        "sta_mv_reverse",
        "sta_mv_grade",
        "sta_mv_exp_biform",
        "sta_mv_versor_inverse",
        "sta_mv_decompose",
        "typedef struct StaMultivector StaMultivector",
        "STA_STATUS_DOMAIN = 3",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
