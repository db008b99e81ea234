use std::ffi::{CStr, CString};
use std::ptr;

use kohn_lens_ffi::*;

struct Lens(*mut KohnLensSpace);

impl Lens {
    fn parse(spec: &str) -> Self {
        let c = CString::new(spec).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(
            unsafe { kohn_lens_parse(c.as_ptr(), &mut h) },
            KohnStatus::Ok
        );
        Lens(h)
    }
}

impl Drop for Lens {
    fn drop(&mut self) {
        unsafe { kohn_lens_free(self.0) };
    }
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { kohn_string_free(s) };
    out
}

fn last_error() -> String {
    let p = kohn_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn construct_and_inspect() {
    let mut h = ptr::null_mut();
    let w = [1i64, -1];
    assert_eq!(
        unsafe { kohn_lens_new(5, w.as_ptr(), 2, &mut h) },
        KohnStatus::Ok
    );
    let l = Lens(h);
    assert_eq!(unsafe { kohn_lens_n(l.0) }, 2);
    assert_eq!(unsafe { kohn_lens_k(l.0) }, 5);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kohn_lens_to_string(l.0, &mut s) }, KohnStatus::Ok);
    assert_eq!(take_string(s), "5:1,4");
    assert!(kohn_last_error_message().is_null());
}

#[test]
fn construction_errors() {
    let mut h = ptr::null_mut();
    let w = [2i64, 1];
    assert_eq!(
        unsafe { kohn_lens_new(4, w.as_ptr(), 2, &mut h) },
        KohnStatus::InvalidArgument
    );
    assert!(h.is_null());
    assert!(last_error().contains("coprime"));
    let bad = CString::new("3-1,2").unwrap();
    assert_eq!(
        unsafe { kohn_lens_parse(bad.as_ptr(), &mut h) },
        KohnStatus::Parse
    );
    assert_eq!(
        unsafe { kohn_lens_parse(ptr::null(), &mut h) },
        KohnStatus::NullPointer
    );
    assert_eq!(unsafe { kohn_lens_n(ptr::null()) }, 0);
    unsafe { kohn_lens_free(ptr::null_mut()) };
    unsafe { kohn_string_free(ptr::null_mut()) };
}

#[test]
fn counts_as_decimal_strings() {
    let l = Lens::parse("3:1,2");
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { kohn_dim_invariant(l.0, 1, 1, &mut s) },
        KohnStatus::Ok
    );
    assert_eq!(take_string(s), "1");
    let sphere = Lens::parse("1:1,1");
    assert_eq!(
        unsafe { kohn_multiplicity(sphere.0, 6, &mut s) },
        KohnStatus::Ok
    );
    assert_eq!(take_string(s), "8");
    assert_eq!(
        unsafe { kohn_counting(sphere.0, 4, &mut s) },
        KohnStatus::Ok
    );
    assert_eq!(take_string(s), "8");
    assert_eq!(
        unsafe { kohn_multiplicity(sphere.0, 7, &mut s) },
        KohnStatus::InvalidArgument
    );
    let big = Lens::parse("1:1,1,1,1,1,1,1,1");
    assert_eq!(
        unsafe { kohn_dim_invariant(big.0, 300, 300, &mut s) },
        KohnStatus::Ok
    );
    assert!(take_string(s).len() > 20);
}

#[test]
fn witness_and_spectra() {
    let (a, b, c) = (
        Lens::parse("5:1,2"),
        Lens::parse("5:1,3"),
        Lens::parse("5:1,1"),
    );
    let (mut found, mut unit, mut sigma) = (false, 0u64, [9usize; 2]);
    let st =
        unsafe { kohn_isometry_witness(a.0, b.0, &mut found, &mut unit, sigma.as_mut_ptr(), 2) };
    assert_eq!(st, KohnStatus::Ok);
    assert!(found);
    assert_eq!((unit, sigma), (3, [1, 0]));
    let st =
        unsafe { kohn_isometry_witness(c.0, a.0, &mut found, &mut unit, sigma.as_mut_ptr(), 2) };
    assert_eq!(st, KohnStatus::Ok);
    assert!(!found);
    let st =
        unsafe { kohn_isometry_witness(a.0, b.0, &mut found, &mut unit, sigma.as_mut_ptr(), 1) };
    assert_eq!(st, KohnStatus::BufferTooSmall);

    let mut eq = false;
    assert_eq!(
        unsafe { kohn_spectra_equal(a.0, b.0, 300, &mut eq) },
        KohnStatus::Ok
    );
    assert!(eq);
    assert_eq!(
        unsafe { kohn_spectra_equal(a.0, c.0, 300, &mut eq) },
        KohnStatus::Ok
    );
    assert!(!eq);

    let other = Lens::parse("7:1,2");
    let st = unsafe {
        kohn_isometry_witness(a.0, other.0, &mut found, &mut unit, sigma.as_mut_ptr(), 2)
    };
    assert_eq!(st, KohnStatus::MismatchedSpaces);

    let mut d = 0u64;
    assert_eq!(unsafe { kohn_gcd_invariant(c.0, &mut d) }, KohnStatus::Ok);
    assert_eq!(d, 5);
    let three = Lens::parse("5:1,2,3");
    assert_eq!(
        unsafe { kohn_gcd_invariant(three.0, &mut d) },
        KohnStatus::UnsupportedDimension
    );
}

#[test]
fn numeric_entry_points() {
    let mut u = 0.0;
    assert_eq!(
        unsafe { kohn_universal_constant(2, &mut u) },
        KohnStatus::Ok
    );
    assert!((u - 1.0 / 48.0).abs() < 1e-9);

    let lambdas: Vec<u64> = (2..=200).step_by(2).collect();
    let mut rank = 0usize;
    assert_eq!(
        unsafe { kohn_span_dimension(3, lambdas.as_ptr(), lambdas.len(), &mut rank) },
        KohnStatus::Ok
    );
    assert_eq!(rank, 6);

    let sphere = Lens::parse("1:1,1");
    let (mut re, mut im) = (0.0, 0.0);
    let st = unsafe { kohn_genfunc_closed(sphere.0, 0.5, 0.0, 0.5, 0.0, &mut re, &mut im) };
    assert_eq!(st, KohnStatus::Ok);
    // (1 - 1/4) / (1/2)^4
    assert!((re - 12.0).abs() < 1e-12 && im.abs() < 1e-12);
    let st = unsafe { kohn_genfunc_closed(sphere.0, 0.95, 0.0, 0.0, 0.0, &mut re, &mut im) };
    assert_eq!(st, KohnStatus::DomainViolation);
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/kohn_lens.h"))
            .unwrap();
    for name in [
        "kohn_lens_new",
        "kohn_lens_parse",
        "kohn_lens_free",
        "kohn_dim_invariant",
        "kohn_multiplicity",
        "kohn_counting",
        "kohn_gcd_invariant",
        "kohn_isometry_witness",
        "kohn_spectra_equal",
        "kohn_universal_constant",
        "kohn_span_dimension",
        "kohn_genfunc_closed",
        "kohn_last_error_message",
        "kohn_string_free",
        "KOHN_STATUS_OK",
        "typedef struct KohnLensSpace KohnLensSpace",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(status) = std::process::Command::new("cc").arg("--version").output() else {
        return;
    };
    if !status.status.success() {
        return;
    }
    let dir = std::env::temp_dir().join(format!("kohn-lens-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        "#include \"kohn_lens.h\"\n\
         int probe(void) {\n\
           KohnLensSpace *l = 0;\n\
           char *s = 0;\n\
           if (kohn_lens_parse(\"3:1,2\", &l) != KOHN_STATUS_OK) return 1;\n\
           kohn_dim_invariant(l, 1, 1, &s);\n\
           kohn_string_free(s);\n\
           kohn_lens_free(l);\n\
           return kohn_last_error_message() != 0;\n\
         }\n",
    )
    .unwrap();
    let out = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
