//! C ABI for the mixnum inter-numerology interference library.
//!
//! The surface follows the usual opaque-handle pattern: a validated
//! numerology pair lives behind `MixnumPair*`, every fallible call returns
//! a `MixnumStatus`, and results come back through out-pointers. The
//! header `include/mixnum.h` is generated by cbindgen at build time.

use mixnum::closed_form::{
    beta, discretization_error_pct, is_orthogonal, min_samples_for_tolerance, relative_distance,
    rho_continuous, rho_discrete, InnerProduct,
};
use mixnum::oracle::{rho_continuous_quadrature, rho_discrete_soe};
use mixnum::{Error, NumerologyPair};
use std::os::raw::c_char;

/// Result of a fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixnumStatus {
    MixnumOk = 0,
    MixnumNullPointer = 1,
    MixnumInvalidArgument = 2,
    MixnumDomainError = 3,
    MixnumToleranceNotReached = 4,
}

impl From<&Error> for MixnumStatus {
    fn from(error: &Error) -> Self {
        match error {
            Error::Domain(_) => MixnumStatus::MixnumDomainError,
            Error::ToleranceNotReached { .. } => MixnumStatus::MixnumToleranceNotReached,
            _ => MixnumStatus::MixnumInvalidArgument,
        }
    }
}

/// Opaque handle to a validated numerology pair.
pub struct MixnumPair {
    inner: NumerologyPair,
}

/// Flattened pair summary.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MixnumPairInfo {
    pub bandwidth_hz: f64,
    pub delta_f1_hz: f64,
    pub delta_f2_hz: f64,
    pub t1_s: f64,
    pub t2_s: f64,
    pub sampling_duration_s: f64,
    pub n1: usize,
    pub n2: usize,
    pub nu: u32,
}

/// One inner product: complex value, magnitude, and the relative distance
/// it was evaluated at.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MixnumInnerProduct {
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    pub d: f64,
}

impl From<InnerProduct> for MixnumInnerProduct {
    fn from(rho: InnerProduct) -> Self {
        Self {
            re: rho.value.re,
            im: rho.value.im,
            magnitude: rho.magnitude,
            d: rho.d,
        }
    }
}

/// Library version as a NUL-terminated static string.
#[no_mangle]
pub extern "C" fn mixnum_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Build a pair from the shared bandwidth and the two subcarrier spacings
/// (wide first). On success writes a heap handle to `out`; release it with
/// `mixnum_pair_free`.
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mixnum_pair_new(
    bandwidth_hz: f64,
    delta_f_wide_hz: f64,
    delta_f_narrow_hz: f64,
    out: *mut *mut MixnumPair,
) -> MixnumStatus {
    if out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    match NumerologyPair::new(bandwidth_hz, delta_f_wide_hz, delta_f_narrow_hz) {
        Ok(pair) => {
            *out = Box::into_raw(Box::new(MixnumPair { inner: pair }));
            MixnumStatus::MixnumOk
        }
        Err(error) => MixnumStatus::from(&error),
    }
}

/// Build a pair from the scaling factor and wide-side subcarrier count,
/// anchoring the narrow spacing at 15 kHz.
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mixnum_pair_from_dimensionless(
    nu: u32,
    n1: usize,
    out: *mut *mut MixnumPair,
) -> MixnumStatus {
    if out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    match NumerologyPair::from_dimensionless(nu, n1) {
        Ok(pair) => {
            *out = Box::into_raw(Box::new(MixnumPair { inner: pair }));
            MixnumStatus::MixnumOk
        }
        Err(error) => MixnumStatus::from(&error),
    }
}

/// Release a handle returned by one of the constructors. A null pointer is
/// a no-op.
///
/// # Safety
/// `pair` must be null or a pointer previously returned by a constructor
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mixnum_pair_free(pair: *mut MixnumPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// # Safety
/// `pair` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mixnum_pair_info(
    pair: *const MixnumPair,
    out: *mut MixnumPairInfo,
) -> MixnumStatus {
    if pair.is_null() || out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    let p = &(*pair).inner;
    *out = MixnumPairInfo {
        bandwidth_hz: p.bandwidth_hz,
        delta_f1_hz: p.wide.subcarrier_spacing_hz,
        delta_f2_hz: p.narrow.subcarrier_spacing_hz,
        t1_s: p.wide.symbol_duration_s,
        t2_s: p.narrow.symbol_duration_s,
        sampling_duration_s: p.sampling_duration_s,
        n1: p.n_wide(),
        n2: p.n_narrow(),
        nu: p.nu,
    };
    MixnumStatus::MixnumOk
}

/// Relative distance d = m - n/nu. Returns NaN for nu < 2.
#[no_mangle]
pub extern "C" fn mixnum_relative_distance(m: usize, n: usize, nu: u32) -> f64 {
    if nu < 2 {
        return f64::NAN;
    }
    relative_distance(m, n, nu)
}

/// True when wide subcarrier m and narrow subcarrier n are orthogonal:
/// n is a multiple of nu and the two are not co-located.
#[no_mangle]
pub extern "C" fn mixnum_is_orthogonal(m: usize, n: usize, nu: u32) -> bool {
    nu >= 2 && is_orthogonal(m, n, nu)
}

unsafe fn write_rho(
    result: Result<InnerProduct, Error>,
    out: *mut MixnumInnerProduct,
) -> MixnumStatus {
    match result {
        Ok(rho) => {
            *out = rho.into();
            MixnumStatus::MixnumOk
        }
        Err(error) => MixnumStatus::from(&error),
    }
}

/// Reduced-form continuous inner product between wide subcarrier m and
/// narrow subcarrier n.
///
/// # Safety
/// `pair` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mixnum_rho_continuous(
    pair: *const MixnumPair,
    m: usize,
    n: usize,
    out: *mut MixnumInnerProduct,
) -> MixnumStatus {
    if pair.is_null() || out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    write_rho(rho_continuous(&(*pair).inner, m, n), out)
}

/// Reduced-form discrete inner product over the pair's N1 samples.
///
/// # Safety
/// `pair` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mixnum_rho_discrete(
    pair: *const MixnumPair,
    m: usize,
    n: usize,
    out: *mut MixnumInnerProduct,
) -> MixnumStatus {
    if pair.is_null() || out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    write_rho(rho_discrete(&(*pair).inner, m, n), out)
}

/// Brute-force discrete inner product (compensated direct summation).
///
/// # Safety
/// `pair` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mixnum_rho_soe(
    pair: *const MixnumPair,
    m: usize,
    n: usize,
    out: *mut MixnumInnerProduct,
) -> MixnumStatus {
    if pair.is_null() || out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    write_rho(rho_discrete_soe(&(*pair).inner, m, n), out)
}

/// Brute-force continuous inner product by adaptive quadrature with the
/// given absolute tolerance (accepted range 1e-13..=1e-6).
///
/// # Safety
/// `pair` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mixnum_rho_quadrature(
    pair: *const MixnumPair,
    m: usize,
    n: usize,
    tol: f64,
    out: *mut MixnumInnerProduct,
) -> MixnumStatus {
    if pair.is_null() || out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    write_rho(rho_continuous_quadrature(&(*pair).inner, m, n, tol), out)
}

/// Discretization factor beta = 1 / |sinc(d / n1)|, defined for |d| < n1.
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mixnum_beta(d: f64, n1: usize, out: *mut f64) -> MixnumStatus {
    if out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    match beta(d, n1) {
        Ok(value) => {
            *out = value;
            MixnumStatus::MixnumOk
        }
        Err(error) => MixnumStatus::from(&error),
    }
}

/// Percentage by which the discrete magnitude exceeds the continuous one.
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mixnum_discretization_error_pct(
    d: f64,
    n1: usize,
    out: *mut f64,
) -> MixnumStatus {
    if out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    match discretization_error_pct(d, n1) {
        Ok(value) => {
            *out = value;
            MixnumStatus::MixnumOk
        }
        Err(error) => MixnumStatus::from(&error),
    }
}

/// Smallest power-of-two sample count whose discretization error at
/// distance d does not exceed tol_pct percent.
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mixnum_min_samples_for_tolerance(
    d: f64,
    tol_pct: f64,
    out: *mut usize,
) -> MixnumStatus {
    if out.is_null() {
        return MixnumStatus::MixnumNullPointer;
    }
    match min_samples_for_tolerance(d, tol_pct) {
        Ok(value) => {
            *out = value;
            MixnumStatus::MixnumOk
        }
        Err(error) => MixnumStatus::from(&error),
    }
}
