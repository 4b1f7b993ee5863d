//! C ABI over the `stalab` kernel.
//!
//! Multivectors cross the boundary as opaque heap handles (`StaMultivector *`)
//! created by the `sta_mv_*` constructors and released with [`sta_mv_free`].
//! Every fallible call returns a [`StaStatus`]; on failure the message is kept
//! per thread and can be copied out with [`sta_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::ptr;

use stalab::spinor::{invariant_decompose, EvenMultivector};
use stalab::{Error, Multivector};

pub const STA_BLADE_COUNT: usize = 16;

/// Opaque multivector handle.
pub struct StaMultivector(Multivector);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StaStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    /// The operation is undefined for this input (singular versor, non-bivector, ...).
    Domain = 3,
    InvalidArgument = 4,
    BufferTooSmall = 5,
    Utf8 = 6,
}

/// Output of [`sta_mv_decompose`]: ψ = ρ^{1/2} e^{γ⁵β/2} R.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct StaFactors {
    pub rho: f64,
    pub beta: f64,
    /// Even coefficients of R in the order 1, g01, g02, g03, g12, g13, g23, g0123.
    pub rotor: [f64; 8],
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: StaStatus, msg: impl Into<String>) -> StaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn from_error(e: Error) -> StaStatus {
    let status = match e {
        Error::Parse(_) => StaStatus::Parse,
        Error::InvalidArgument(_) | Error::Io(_) => StaStatus::InvalidArgument,
        _ => StaStatus::Domain,
    };
    fail(status, e.to_string())
}

fn boxed(m: Multivector) -> *mut StaMultivector {
    Box::into_raw(Box::new(StaMultivector(m)))
}

unsafe fn get<'a>(p: *const StaMultivector) -> Option<&'a Multivector> {
    p.as_ref().map(|h| &h.0)
}

unsafe fn put(out: *mut *mut StaMultivector, m: Multivector) -> StaStatus {
    *out = boxed(m);
    StaStatus::Ok
}

macro_rules! require {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            return fail(StaStatus::NullPointer, "null pointer argument");
        }
    };
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn sta_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Zero multivector. Never returns null.
#[no_mangle]
pub extern "C" fn sta_mv_zero() -> *mut StaMultivector {
    boxed(Multivector::ZERO)
}

/// Multivector from 16 coefficients in canonical blade order; null if `coeffs` is null.
///
/// # Safety
/// `coeffs` must be null or point to 16 readable doubles.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_from_coeffs(coeffs: *const f64) -> *mut StaMultivector {
    if coeffs.is_null() {
        fail(StaStatus::NullPointer, "null coefficient array");
        return ptr::null_mut();
    }
    let mut c = [0.0; STA_BLADE_COUNT];
    ptr::copy_nonoverlapping(coeffs, c.as_mut_ptr(), STA_BLADE_COUNT);
    boxed(Multivector::from_coeffs(c))
}

/// Parses the textual form, e.g. `"1 + 0.5 g12 - 2 g0123"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_parse(text: *const c_char, out: *mut *mut StaMultivector) -> StaStatus {
    require!(text, out);
    let Ok(s) = CStr::from_ptr(text).to_str() else {
        return fail(StaStatus::Utf8, "input is not valid UTF-8");
    };
    match s.parse::<Multivector>() {
        Ok(m) => put(out, m),
        Err(e) => from_error(e),
    }
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `mv` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_free(mv: *mut StaMultivector) {
    if !mv.is_null() {
        drop(Box::from_raw(mv));
    }
}

/// Copies the 16 coefficients into `out`.
///
/// # Safety
/// `mv` must be a live handle; `out` must point to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_coeffs(mv: *const StaMultivector, out: *mut f64) -> StaStatus {
    require!(mv, out);
    let m = get(mv).unwrap();
    ptr::copy_nonoverlapping(m.coeffs().as_ptr(), out, STA_BLADE_COUNT);
    StaStatus::Ok
}

/// Writes the textual form into `buf`. If it does not fit, `*needed` receives
/// the required size including the NUL and `BufferTooSmall` is returned.
///
/// # Safety
/// `mv` must be a live handle; `buf` must point to `len` writable bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_format(
    mv: *const StaMultivector,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> StaStatus {
    require!(mv);
    let text = get(mv).unwrap().to_string();
    if !needed.is_null() {
        *needed = text.len() + 1;
    }
    if buf.is_null() || len < text.len() + 1 {
        return fail(StaStatus::BufferTooSmall, format!("need {} bytes", text.len() + 1));
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf.cast(), text.len());
    *buf.add(text.len()) = 0;
    StaStatus::Ok
}

unsafe fn binary(
    a: *const StaMultivector,
    b: *const StaMultivector,
    out: *mut *mut StaMultivector,
    op: fn(&Multivector, &Multivector) -> Multivector,
) -> StaStatus {
    require!(a, b, out);
    put(out, op(get(a).unwrap(), get(b).unwrap()))
}

unsafe fn unary(
    a: *const StaMultivector,
    out: *mut *mut StaMultivector,
    op: fn(&Multivector) -> stalab::Result<Multivector>,
) -> StaStatus {
    require!(a, out);
    match op(get(a).unwrap()) {
        Ok(m) => put(out, m),
        Err(e) => from_error(e),
    }
}

/// Geometric product.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_gp(
    a: *const StaMultivector,
    b: *const StaMultivector,
    out: *mut *mut StaMultivector,
) -> StaStatus {
    binary(a, b, out, Multivector::gp)
}

/// Outer product.
///
/// # Safety
/// As for [`sta_mv_gp`].
#[no_mangle]
pub unsafe extern "C" fn sta_mv_wedge(
    a: *const StaMultivector,
    b: *const StaMultivector,
    out: *mut *mut StaMultivector,
) -> StaStatus {
    binary(a, b, out, Multivector::wedge)
}

/// Sum.
///
/// # Safety
/// As for [`sta_mv_gp`].
#[no_mangle]
pub unsafe extern "C" fn sta_mv_add(
    a: *const StaMultivector,
    b: *const StaMultivector,
    out: *mut *mut StaMultivector,
) -> StaStatus {
    binary(a, b, out, |x, y| *x + *y)
}

/// Reversion.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_reverse(a: *const StaMultivector, out: *mut *mut StaMultivector) -> StaStatus {
    unary(a, out, |m| Ok(m.reverse()))
}

/// Grade-`k` projection; `k` above 4 is an invalid argument.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_grade(a: *const StaMultivector, k: u32, out: *mut *mut StaMultivector) -> StaStatus {
    require!(a, out);
    if k > 4 {
        return fail(StaStatus::InvalidArgument, format!("grade {k} out of range 0..=4"));
    }
    put(out, get(a).unwrap().grade(k as usize))
}

/// Exponential of a pure bivector.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_exp_biform(a: *const StaMultivector, out: *mut *mut StaMultivector) -> StaStatus {
    unary(a, out, Multivector::exp_biform)
}

/// Inverse of a versor.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_versor_inverse(a: *const StaMultivector, out: *mut *mut StaMultivector) -> StaStatus {
    unary(a, out, Multivector::versor_inverse)
}

/// Invariant factors of an even, invertible multivector.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sta_mv_decompose(a: *const StaMultivector, out: *mut StaFactors) -> StaStatus {
    require!(a, out);
    let m = get(a).unwrap();
    let result = EvenMultivector::try_from_multivector(m, 1e-12 * m.max_abs().max(1.0))
        .and_then(|psi| invariant_decompose(&psi));
    match result {
        Ok(f) => {
            *out = StaFactors { rho: f.rho, beta: f.beta, rotor: *f.rotor.coeffs() };
            StaStatus::Ok
        }
        Err(e) => from_error(e),
    }
}
