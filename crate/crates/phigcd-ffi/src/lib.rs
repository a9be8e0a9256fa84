//! C ABI over the phigcd library: opaque handles, integer status codes and
//! out-parameters, so other languages can bind the scans and predictions.
//!
//! Conventions:
//! * every fallible call returns a [`PhigcdStatus`]; outputs go through
//!   pointers that are written only on `Ok`;
//! * handles created by `*_new` functions must be released with the
//!   matching `*_free`;
//! * a human-readable message for the most recent failure on the current
//!   thread is available via [`phigcd_last_error`];
//! * the C header mirroring this surface lives in `include/phigcd.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use phigcd::arith::sieve_primes;
use phigcd::asympt::{self, PredictionSettings, Predictor};
use phigcd::multiplicative::MultiplicativeSpec;
use phigcd::scan::{self, ScanConfig};
use phigcd::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhigcdStatus {
    Ok = 0,
    /// Bad spec name, parameters or settings.
    Config = 1,
    /// A numeric routine failed to reach its tolerance.
    Numeric = 2,
    /// Arguments outside the mathematical domain.
    Domain = 3,
    /// Request exceeds configured capacity limits.
    Capacity = 4,
    /// An operation precondition does not hold.
    Precondition = 5,
    /// A required pointer argument was null.
    NullArgument = 6,
    /// A string argument was not valid UTF-8.
    Utf8 = 7,
    Io = 8,
    /// An internal invariant was violated.
    Internal = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> PhigcdStatus {
    match err {
        Error::Capacity(_) => PhigcdStatus::Capacity,
        Error::Precondition(_) => PhigcdStatus::Precondition,
        Error::Domain(_) => PhigcdStatus::Domain,
        Error::Config(_) => PhigcdStatus::Config,
        Error::Numeric(_) => PhigcdStatus::Numeric,
        Error::Io(_) => PhigcdStatus::Io,
    }
}

/// Run `f` behind a panic guard, translating errors and panics to codes.
fn guarded<F: FnOnce() -> Result<PhigcdStatus, Error>>(f: F) -> PhigcdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(err)) => {
            set_error(err.to_string());
            status_of(&err)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            PhigcdStatus::Internal
        }
    }
}

/// Message for the most recent failure on this thread; valid until the next
/// failing call on the same thread. Null when no failure has occurred.
#[no_mangle]
pub extern "C" fn phigcd_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Static name for a status code.
#[no_mangle]
pub extern "C" fn phigcd_status_name(status: PhigcdStatus) -> *const c_char {
    let name: &'static CStr = match status {
        PhigcdStatus::Ok => c"ok",
        PhigcdStatus::Config => c"config",
        PhigcdStatus::Numeric => c"numeric",
        PhigcdStatus::Domain => c"domain",
        PhigcdStatus::Capacity => c"capacity",
        PhigcdStatus::Precondition => c"precondition",
        PhigcdStatus::NullArgument => c"null-argument",
        PhigcdStatus::Utf8 => c"utf8",
        PhigcdStatus::Io => c"io",
        PhigcdStatus::Internal => c"internal",
    };
    name.as_ptr()
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn phigcd_version() -> *const c_char {
    static VERSION: &CStr = c"0.1.0";
    VERSION.as_ptr()
}

/// Opaque multiplicative weight spec.
pub struct PhigcdSpec(MultiplicativeSpec);

/// Opaque prediction engine (settings + prime table).
pub struct PhigcdPredictor(Predictor);

unsafe fn utf8_arg<'a>(s: *const c_char) -> Result<&'a str, PhigcdStatus> {
    if s.is_null() {
        return Err(PhigcdStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(s) }.to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        PhigcdStatus::Utf8
    })
}

macro_rules! out_ptr {
    ($ptr:ident) => {
        match unsafe { $ptr.as_mut() } {
            Some(r) => r,
            None => {
                set_error(format!("null output pointer `{}`", stringify!($ptr)));
                return PhigcdStatus::NullArgument;
            }
        }
    };
}

macro_rules! handle {
    ($ptr:ident) => {
        match unsafe { $ptr.as_ref() } {
            Some(h) => h,
            None => {
                set_error(format!("null handle `{}`", stringify!($ptr)));
                return PhigcdStatus::NullArgument;
            }
        }
    };
}

/// Create a spec from its name (`mu`, `tau`, `rpower:R`, `rfree:R`,
/// `two-squares`, `smooth:B`, `rough:B`).
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. The handle must be released with [`phigcd_spec_free`].
#[no_mangle]
pub unsafe extern "C" fn phigcd_spec_new(
    name: *const c_char,
    out: *mut *mut PhigcdSpec,
) -> PhigcdStatus {
    let out = out_ptr!(out);
    let name = match unsafe { utf8_arg(name) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    guarded(|| {
        let spec = MultiplicativeSpec::builtin(name)?;
        *out = Box::into_raw(Box::new(PhigcdSpec(spec)));
        Ok(PhigcdStatus::Ok)
    })
}

/// Release a spec handle. Null is a no-op.
///
/// # Safety
/// `spec` must be null or a pointer previously returned by
/// [`phigcd_spec_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn phigcd_spec_free(spec: *mut PhigcdSpec) {
    if !spec.is_null() {
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Create a prediction engine; sieves primes up to `prime_cutoff` once.
///
/// # Safety
/// `out` must be a valid pointer; release the handle with
/// [`phigcd_predictor_free`].
#[no_mangle]
pub unsafe extern "C" fn phigcd_predictor_new(
    tol: f64,
    prime_cutoff: u64,
    k_order: u32,
    out: *mut *mut PhigcdPredictor,
) -> PhigcdStatus {
    let out = out_ptr!(out);
    guarded(|| {
        let predictor = Predictor::new(PredictionSettings {
            tol,
            prime_cutoff,
            k_order,
        })?;
        *out = Box::into_raw(Box::new(PhigcdPredictor(predictor)));
        Ok(PhigcdStatus::Ok)
    })
}

/// Release a predictor handle. Null is a no-op.
///
/// # Safety
/// `predictor` must be null or a pointer previously returned by
/// [`phigcd_predictor_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn phigcd_predictor_free(predictor: *mut PhigcdPredictor) {
    if !predictor.is_null() {
        drop(unsafe { Box::from_raw(predictor) });
    }
}

/// S_g(x) = sum_{n<=x} f(gcd(n, phi(n))) by the streaming scan.
///
/// # Safety
/// `spec` must be a live spec handle; `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_s_direct(
    spec: *const PhigcdSpec,
    x: u64,
    workers: u32,
    out_value: *mut f64,
) -> PhigcdStatus {
    let spec = handle!(spec);
    let out_value = out_ptr!(out_value);
    guarded(|| {
        let table = sieve_primes((x + 1).isqrt() + 1)?;
        let cfg = ScanConfig::with_workers(workers.max(1) as usize);
        let result = scan::s_direct(&spec.0, x, &table, &cfg)?;
        *out_value = result.value.as_f64();
        Ok(PhigcdStatus::Ok)
    })
}

/// A_d(x) = #{n <= x : d | n and d | phi(n)}.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_congruence_sum(
    d: u64,
    x: u64,
    out_value: *mut u64,
) -> PhigcdStatus {
    let out_value = out_ptr!(out_value);
    guarded(|| {
        let table = sieve_primes((x + 1).isqrt() + 1)?;
        *out_value = scan::congruence_sum(d, x, &table, &ScanConfig::default())?;
        Ok(PhigcdStatus::Ok)
    })
}

/// Counts of n <= x with d | phi(n) and gcd(phi(n), d) = 1.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_count_phi_divisibility(
    d: u64,
    x: u64,
    out_divisible: *mut u64,
    out_coprime: *mut u64,
) -> PhigcdStatus {
    let out_divisible = out_ptr!(out_divisible);
    let out_coprime = out_ptr!(out_coprime);
    guarded(|| {
        let table = sieve_primes((x + 1).isqrt() + 1)?;
        let counts = scan::count_phi_divisibility_multi(&[d], x, &table, &ScanConfig::default())?;
        *out_divisible = counts[0].divisible;
        *out_coprime = counts[0].coprime;
        Ok(PhigcdStatus::Ok)
    })
}

/// Main term for the spec at real x >= 100.
///
/// # Safety
/// `predictor` and `spec` must be live handles; `out_value` valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_main_term(
    predictor: *const PhigcdPredictor,
    spec: *const PhigcdSpec,
    x: f64,
    out_value: *mut f64,
) -> PhigcdStatus {
    let predictor = handle!(predictor);
    let spec = handle!(spec);
    let out_value = out_ptr!(out_value);
    guarded(|| {
        *out_value = predictor.0.main_term(&spec.0, x)?;
        Ok(PhigcdStatus::Ok)
    })
}

/// Leading form without the exp(Q_g) correction.
///
/// # Safety
/// `predictor` and `spec` must be live handles; `out_value` valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_corollary_product(
    predictor: *const PhigcdPredictor,
    spec: *const PhigcdSpec,
    x: f64,
    out_value: *mut f64,
) -> PhigcdStatus {
    let predictor = handle!(predictor);
    let spec = handle!(spec);
    let out_value = out_ptr!(out_value);
    guarded(|| {
        *out_value = predictor.0.corollary_product(&spec.0, x)?;
        Ok(PhigcdStatus::Ok)
    })
}

/// Q_g(x) with its truncation tail bound.
///
/// # Safety
/// `predictor` and `spec` must be live handles; output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_q_g(
    predictor: *const PhigcdPredictor,
    spec: *const PhigcdSpec,
    x: f64,
    out_value: *mut f64,
    out_tail_bound: *mut f64,
) -> PhigcdStatus {
    let predictor = handle!(predictor);
    let spec = handle!(spec);
    let out_value = out_ptr!(out_value);
    let out_tail_bound = out_ptr!(out_tail_bound);
    guarded(|| {
        let q = predictor.0.q_g(&spec.0, x)?;
        *out_value = q.value;
        *out_tail_bound = q.tail_bound;
        Ok(PhigcdStatus::Ok)
    })
}

/// Euler-Mascheroni constant.
#[no_mangle]
pub extern "C" fn phigcd_euler_gamma() -> f64 {
    asympt::euler_gamma()
}

/// zeta(r) for integer r >= 2, with its tail certificate.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_zeta(
    r: u32,
    out_value: *mut f64,
    out_tail_bound: *mut f64,
) -> PhigcdStatus {
    let out_value = out_ptr!(out_value);
    let out_tail_bound = out_ptr!(out_tail_bound);
    guarded(|| {
        let z = asympt::zeta(r)?;
        *out_value = z.value;
        *out_tail_bound = z.tail_bound;
        Ok(PhigcdStatus::Ok)
    })
}

/// Mertens constant at the predictor's cutoff.
///
/// # Safety
/// `predictor` must be a live handle; output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_mertens_constant(
    predictor: *const PhigcdPredictor,
    out_value: *mut f64,
    out_tail_bound: *mut f64,
) -> PhigcdStatus {
    let predictor = handle!(predictor);
    let out_value = out_ptr!(out_value);
    let out_tail_bound = out_ptr!(out_tail_bound);
    guarded(|| {
        let c = predictor.0.mertens_constant()?;
        *out_value = c.value;
        *out_tail_bound = c.tail_bound;
        Ok(PhigcdStatus::Ok)
    })
}

/// Landau-Ramanujan constant at the predictor's cutoff.
///
/// # Safety
/// `predictor` must be a live handle; output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_landau_ramanujan(
    predictor: *const PhigcdPredictor,
    out_value: *mut f64,
    out_tail_bound: *mut f64,
) -> PhigcdStatus {
    let predictor = handle!(predictor);
    let out_value = out_ptr!(out_value);
    let out_tail_bound = out_ptr!(out_tail_bound);
    guarded(|| {
        let b = predictor.0.landau_ramanujan()?;
        *out_value = b.value;
        *out_tail_bound = b.tail_bound;
        Ok(PhigcdStatus::Ok)
    })
}

/// Expansion coefficient a_k = int_1^inf (log t)^k / (t e^t) dt.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_a_coeff(k: u32, tol: f64, out_value: *mut f64) -> PhigcdStatus {
    let out_value = out_ptr!(out_value);
    guarded(|| {
        let settings = PredictionSettings {
            tol,
            ..Default::default()
        };
        *out_value = asympt::a_coeff(k, &settings)?;
        Ok(PhigcdStatus::Ok)
    })
}

/// Expansion coefficient b_k = int_1^inf (-log t)^k (1 - e^(-1/t)) dt/t.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_b_coeff(k: u32, tol: f64, out_value: *mut f64) -> PhigcdStatus {
    let out_value = out_ptr!(out_value);
    guarded(|| {
        let settings = PredictionSettings {
            tol,
            ..Default::default()
        };
        *out_value = asympt::b_coeff(k, &settings)?;
        Ok(PhigcdStatus::Ok)
    })
}

/// k-th derivative of 1/s - Gamma(s) at 0.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn phigcd_gamma_laurent_f(
    k: u32,
    tol: f64,
    out_value: *mut f64,
) -> PhigcdStatus {
    let out_value = out_ptr!(out_value);
    guarded(|| {
        let settings = PredictionSettings {
            tol,
            ..Default::default()
        };
        *out_value = asympt::gamma_laurent_f(k, &settings)?;
        Ok(PhigcdStatus::Ok)
    })
}
