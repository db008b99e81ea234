//! C ABI over `kohn_lens`.
//!
//! Every fallible call returns a [`KohnStatus`] and writes results through
//! out-pointers. On failure a message is available from
//! [`kohn_last_error_message`] on the same thread until the next call.
//! Big integers cross the boundary as decimal C strings owned by the caller
//! and released with [`kohn_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kohn_lens::asymptotics::{universal_constant, QuadratureConfig};
use kohn_lens::genfunc::{genfunc_closed, GenFuncPoint};
use kohn_lens::invariant::dim_invariant_dp;
use kohn_lens::isospectral::{condition4_witness, span_dimension, spectra_equal_up_to};
use kohn_lens::spectrum::{lens_counting, multiplicity};
use kohn_lens::{gcd_invariant, Bidegree, Error, LensSpace};
use num_complex::Complex64;

/// Opaque lens space handle.
pub struct KohnLensSpace(LensSpace);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KohnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    ResourceLimit = 4,
    MismatchedSpaces = 5,
    UnsupportedDimension = 6,
    DomainViolation = 7,
    NonConvergence = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(KohnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => KohnStatus::Parse,
            Error::ResourceLimit { .. } => KohnStatus::ResourceLimit,
            Error::MismatchedSpaces(_) => KohnStatus::MismatchedSpaces,
            Error::UnsupportedDimension { .. } => KohnStatus::UnsupportedDimension,
            Error::DomainViolation { .. } => KohnStatus::DomainViolation,
            Error::NonConvergence(_) => KohnStatus::NonConvergence,
            _ => KohnStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(KohnStatus::NullPointer, format!("`{name}` is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KohnStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KohnStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            KohnStatus::Panic
        }
    }
}

unsafe fn handle<'a>(p: *const KohnLensSpace, name: &str) -> Result<&'a LensSpace, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null(name))
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(KohnStatus::InvalidArgument, e.to_string()))?;
    write(out, c.into_raw(), "out")
}

/// Builds `L(k; weights[0], ..., weights[n-1])`.
///
/// # Safety
/// `weights` must point to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_lens_new(
    k: i64,
    weights: *const i64,
    n: usize,
    out: *mut *mut KohnLensSpace,
) -> KohnStatus {
    guard(|| {
        if weights.is_null() {
            return Err(null("weights"));
        }
        let w = std::slice::from_raw_parts(weights, n);
        let lens = LensSpace::new(n, k, w)?;
        write(out, Box::into_raw(Box::new(KohnLensSpace(lens))), "out")
    })
}

/// Parses `"k:l1,l2,..."`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_lens_parse(
    spec: *const c_char,
    out: *mut *mut KohnLensSpace,
) -> KohnStatus {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        let s = CStr::from_ptr(spec)
            .to_str()
            .map_err(|e| Failure(KohnStatus::Parse, e.to_string()))?;
        let lens: LensSpace = s.parse()?;
        write(out, Box::into_raw(Box::new(KohnLensSpace(lens))), "out")
    })
}

/// # Safety
/// `lens` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kohn_lens_free(lens: *mut KohnLensSpace) {
    if !lens.is_null() {
        drop(Box::from_raw(lens));
    }
}

/// Dimension parameter `n`, or 0 for a null handle.
///
/// # Safety
/// `lens` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kohn_lens_n(lens: *const KohnLensSpace) -> usize {
    lens.as_ref().map_or(0, |h| h.0.n())
}

/// Group order `k`, or 0 for a null handle.
///
/// # Safety
/// `lens` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kohn_lens_k(lens: *const KohnLensSpace) -> u64 {
    lens.as_ref().map_or(0, |h| h.0.k())
}

/// Canonical `"k:l1,..."` form.
///
/// # Safety
/// `lens` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_lens_to_string(
    lens: *const KohnLensSpace,
    out: *mut *mut c_char,
) -> KohnStatus {
    guard(|| write_string(out, handle(lens, "lens")?.to_string()))
}

/// `dim H^G_{p,q}` in decimal.
///
/// # Safety
/// `lens` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_dim_invariant(
    lens: *const KohnLensSpace,
    p: u64,
    q: u64,
    out: *mut *mut c_char,
) -> KohnStatus {
    guard(|| {
        let dim = dim_invariant_dp(handle(lens, "lens")?, Bidegree::new(p, q));
        write_string(out, dim.to_string())
    })
}

/// Multiplicity of the eigenvalue `lambda` in decimal.
///
/// # Safety
/// `lens` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_multiplicity(
    lens: *const KohnLensSpace,
    lambda: i64,
    out: *mut *mut c_char,
) -> KohnStatus {
    guard(|| {
        let m = multiplicity(handle(lens, "lens")?, lambda)?;
        write_string(out, m.to_string())
    })
}

/// `N_L(lambda)` in decimal.
///
/// # Safety
/// `lens` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_counting(
    lens: *const KohnLensSpace,
    lambda: u64,
    out: *mut *mut c_char,
) -> KohnStatus {
    guard(|| {
        write_string(
            out,
            lens_counting(handle(lens, "lens")?, lambda).to_string(),
        )
    })
}

/// `gcd(k, l_1 - l_2)`; requires `n = 2`.
///
/// # Safety
/// `lens` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_gcd_invariant(
    lens: *const KohnLensSpace,
    out: *mut u64,
) -> KohnStatus {
    guard(|| write(out, gcd_invariant(handle(lens, "lens")?)?, "out"))
}

/// Searches for `(a, sigma)` with `right_i = a * left_{sigma(i)} mod k`.
///
/// `sigma` is written zero-based into `sigma_out`, which must hold `n`
/// entries. When no witness exists `*found` is false and the other outputs
/// are untouched.
///
/// # Safety
/// Handles must be live; `found` and `a_out` writable; `sigma_out` writable for `sigma_len` entries.
#[no_mangle]
pub unsafe extern "C" fn kohn_isometry_witness(
    left: *const KohnLensSpace,
    right: *const KohnLensSpace,
    found: *mut bool,
    a_out: *mut u64,
    sigma_out: *mut usize,
    sigma_len: usize,
) -> KohnStatus {
    guard(|| {
        let (l, r) = (handle(left, "left")?, handle(right, "right")?);
        if found.is_null() || a_out.is_null() || sigma_out.is_null() {
            return Err(null("output"));
        }
        if sigma_len < l.n() {
            return Err(Failure(
                KohnStatus::BufferTooSmall,
                format!("sigma buffer holds {sigma_len}, need {}", l.n()),
            ));
        }
        match condition4_witness(l, r)? {
            Some(w) => {
                ptr::copy_nonoverlapping(w.sigma.as_ptr(), sigma_out, w.sigma.len());
                a_out.write(w.a);
                found.write(true);
            }
            None => found.write(false),
        }
        Ok(())
    })
}

/// Whether multiplicities agree at every even eigenvalue up to `lambda_max`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_spectra_equal(
    left: *const KohnLensSpace,
    right: *const KohnLensSpace,
    lambda_max: u64,
    out: *mut bool,
) -> KohnStatus {
    guard(|| {
        let eq = spectra_equal_up_to(handle(left, "left")?, handle(right, "right")?, lambda_max)?;
        write(out, eq, "out")
    })
}

/// The Weyl constant `u_n` with default quadrature settings.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_universal_constant(n: usize, out: *mut f64) -> KohnStatus {
    guard(|| {
        write(
            out,
            universal_constant(n, &QuadratureConfig::default())?,
            "out",
        )
    })
}

/// Rank over `Q` of `{C^lambda}` for the given eigenvalues.
///
/// # Safety
/// `lambdas` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_span_dimension(
    k: u64,
    lambdas: *const u64,
    len: usize,
    out: *mut usize,
) -> KohnStatus {
    guard(|| {
        if lambdas.is_null() {
            return Err(null("lambdas"));
        }
        let ls = std::slice::from_raw_parts(lambdas, len);
        write(out, span_dimension(k, ls)?, "out")
    })
}

/// Closed-form generating function at `(z, w)`.
///
/// # Safety
/// `lens` must be a live handle; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kohn_genfunc_closed(
    lens: *const KohnLensSpace,
    z_re: f64,
    z_im: f64,
    w_re: f64,
    w_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> KohnStatus {
    guard(|| {
        if out_im.is_null() {
            return Err(null("out_im"));
        }
        let pt = GenFuncPoint::new(Complex64::new(z_re, z_im), Complex64::new(w_re, w_im));
        let v = genfunc_closed(handle(lens, "lens")?, pt)?;
        write(out_re, v.re, "out_re")?;
        out_im.write(v.im);
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null.
///
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn kohn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn kohn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
