//! C ABI for the pathway library.
//!
//! All functions return a status code (`PW_OK` on success) and write results
//! through out-pointers. Model parameters live behind the opaque handle
//! `PwPathway`; create one with `pw_pathway_new` and release it with
//! `pw_pathway_free`. After any failure, `pw_last_error_message` returns a
//! human-readable description for the calling thread.
//!
//! The C header is generated into `include/pathway.h` at build time.

use std::cell::RefCell;
use std::ffi::CString;
use std::os::raw::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pathway::error::Error;
use pathway::pathway as pw;
use pathway::pathway::PathwayParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Success.
pub const PW_OK: c_int = 0;
/// Parameters or arguments outside the mathematical domain.
pub const PW_ERR_DOMAIN: c_int = 1;
/// A numerical routine could not reach the requested accuracy.
pub const PW_ERR_ACCURACY: c_int = 2;
/// Invalid model specification.
pub const PW_ERR_SPEC: c_int = 3;
/// Estimation failure.
pub const PW_ERR_FIT: c_int = 4;
/// Invalid usage of the API (bad flag combination, malformed input).
pub const PW_ERR_USAGE: c_int = 5;
/// A required pointer argument was null.
pub const PW_ERR_NULL: c_int = 6;
/// An internal panic was caught at the FFI boundary.
pub const PW_ERR_PANIC: c_int = 7;

/// Opaque handle to a validated pathway parameter set.
#[repr(C)]
pub struct PwPathway {
    _private: [u8; 0],
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_last_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn code_for(err: &Error) -> c_int {
    match err {
        Error::Domain(_) => PW_ERR_DOMAIN,
        Error::Accuracy(_) => PW_ERR_ACCURACY,
        Error::Spec(_) => PW_ERR_SPEC,
        Error::Fit(_) => PW_ERR_FIT,
        Error::Usage(_) => PW_ERR_USAGE,
    }
}

fn guard<F: FnOnce() -> c_int>(body: F) -> c_int {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => {
            set_last_error("internal panic caught at the FFI boundary");
            PW_ERR_PANIC
        }
    }
}

fn write_result(res: Result<f64, Error>, out: *mut f64) -> c_int {
    if out.is_null() {
        set_last_error("null output pointer");
        return PW_ERR_NULL;
    }
    match res {
        Ok(v) => {
            unsafe { *out = v };
            PW_OK
        }
        Err(e) => {
            set_last_error(&e.to_string());
            code_for(&e)
        }
    }
}

unsafe fn params_ref<'a>(handle: *const PwPathway) -> Option<&'a PathwayParams> {
    if handle.is_null() {
        set_last_error("null pathway handle");
        None
    } else {
        Some(&*(handle as *const PathwayParams))
    }
}

/// Last error message for the calling thread.
///
/// The pointer stays valid until the next failing call on the same thread.
/// Never null; the string is empty when no error has occurred.
#[no_mangle]
pub extern "C" fn pw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Create a pathway model handle.
///
/// `symmetric` is 0 for a density on the positive half-line and nonzero for
/// the symmetric variant on the whole line. On success writes a handle to
/// `*out` that must be released with `pw_pathway_free`.
#[no_mangle]
pub extern "C" fn pw_pathway_new(
    alpha: f64,
    a: f64,
    delta: f64,
    gamma: f64,
    eta: f64,
    symmetric: c_int,
    out: *mut *mut PwPathway,
) -> c_int {
    guard(|| {
        if out.is_null() {
            set_last_error("null output pointer");
            return PW_ERR_NULL;
        }
        let built = if symmetric != 0 {
            PathwayParams::new_symmetric(alpha, a, delta, gamma, eta)
        } else {
            PathwayParams::new(alpha, a, delta, gamma, eta)
        };
        match built {
            Ok(p) => {
                let raw = Box::into_raw(Box::new(p)) as *mut PwPathway;
                unsafe { *out = raw };
                PW_OK
            }
            Err(e) => {
                set_last_error(&e.to_string());
                code_for(&e)
            }
        }
    })
}

/// Release a handle created by `pw_pathway_new`. Passing null is a no-op.
#[no_mangle]
pub extern "C" fn pw_pathway_free(handle: *mut PwPathway) {
    if !handle.is_null() {
        unsafe { drop(Box::from_raw(handle as *mut PathwayParams)) };
    }
}

/// Support of the density: writes the lower and upper endpoints.
/// The upper endpoint is +infinity for the gamma and type-2 regimes.
#[no_mangle]
pub extern "C" fn pw_pathway_support(
    handle: *const PwPathway,
    lo: *mut f64,
    hi: *mut f64,
) -> c_int {
    guard(|| {
        let Some(p) = (unsafe { params_ref(handle) }) else {
            return PW_ERR_NULL;
        };
        if lo.is_null() || hi.is_null() {
            set_last_error("null output pointer");
            return PW_ERR_NULL;
        }
        let (l, h) = pw::support(p);
        unsafe {
            *lo = l;
            *hi = h;
        }
        PW_OK
    })
}

/// Probability density at `x`.
#[no_mangle]
pub extern "C" fn pw_pathway_pdf(handle: *const PwPathway, x: f64, out: *mut f64) -> c_int {
    guard(|| {
        let Some(p) = (unsafe { params_ref(handle) }) else {
            return PW_ERR_NULL;
        };
        write_result(pw::pdf(p, x), out)
    })
}

/// Cumulative distribution function at `x`.
#[no_mangle]
pub extern "C" fn pw_pathway_cdf(handle: *const PwPathway, x: f64, out: *mut f64) -> c_int {
    guard(|| {
        let Some(p) = (unsafe { params_ref(handle) }) else {
            return PW_ERR_NULL;
        };
        write_result(pw::cdf(p, x), out)
    })
}

/// Quantile function: smallest `x` with `cdf(x) >= prob`.
#[no_mangle]
pub extern "C" fn pw_pathway_quantile(
    handle: *const PwPathway,
    prob: f64,
    out: *mut f64,
) -> c_int {
    guard(|| {
        let Some(p) = (unsafe { params_ref(handle) }) else {
            return PW_ERR_NULL;
        };
        write_result(pw::quantile(p, prob), out)
    })
}

/// Raw moment of order `h` (fractional orders allowed where they exist).
#[no_mangle]
pub extern "C" fn pw_pathway_moment(handle: *const PwPathway, h: f64, out: *mut f64) -> c_int {
    guard(|| {
        let Some(p) = (unsafe { params_ref(handle) }) else {
            return PW_ERR_NULL;
        };
        write_result(pw::moment(p, h), out)
    })
}

/// Mathai entropy of order `alpha_e` (`alpha_e < 2`; `alpha_e = 1` gives the
/// Shannon entropy).
#[no_mangle]
pub extern "C" fn pw_pathway_entropy(
    handle: *const PwPathway,
    alpha_e: f64,
    out: *mut f64,
) -> c_int {
    guard(|| {
        let Some(p) = (unsafe { params_ref(handle) }) else {
            return PW_ERR_NULL;
        };
        write_result(pw::mathai_entropy(p, alpha_e), out)
    })
}

/// Laplace transform of the density at argument `t`, by adaptive quadrature.
#[no_mangle]
pub extern "C" fn pw_pathway_laplace(handle: *const PwPathway, t: f64, out: *mut f64) -> c_int {
    guard(|| {
        let Some(p) = (unsafe { params_ref(handle) }) else {
            return PW_ERR_NULL;
        };
        write_result(pathway::transforms::laplace_pathway_quad(p, t), out)
    })
}

/// Draw `n` samples into the caller-provided buffer `out` (capacity `n`),
/// using a deterministic generator seeded with `seed`.
#[no_mangle]
pub extern "C" fn pw_pathway_sample(
    handle: *const PwPathway,
    seed: u64,
    n: usize,
    out: *mut f64,
) -> c_int {
    guard(|| {
        let Some(p) = (unsafe { params_ref(handle) }) else {
            return PW_ERR_NULL;
        };
        if out.is_null() {
            set_last_error("null output pointer");
            return PW_ERR_NULL;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match pw::sample(p, &mut rng, n) {
            Ok(draws) => {
                let dst = unsafe { std::slice::from_raw_parts_mut(out, n) };
                dst.copy_from_slice(&draws);
                PW_OK
            }
            Err(e) => {
                set_last_error(&e.to_string());
                code_for(&e)
            }
        }
    })
}

/// Estimate the pathway index `alpha` from `n` samples by moment matching,
/// holding the remaining parameters fixed. Requires at least 100 samples.
#[no_mangle]
pub extern "C" fn pw_fit_alpha_moments(
    samples: *const f64,
    n: usize,
    a: f64,
    delta: f64,
    gamma: f64,
    eta: f64,
    out: *mut f64,
) -> c_int {
    guard(|| {
        if samples.is_null() {
            set_last_error("null sample buffer");
            return PW_ERR_NULL;
        }
        let data = unsafe { std::slice::from_raw_parts(samples, n) };
        write_result(
            pw::fit_alpha_moments(data, a, delta, gamma, eta).map(|p| p.alpha),
            out,
        )
    })
}

/// Bessel-extended gamma density at `x`.
#[no_mangle]
pub extern "C" fn pw_bessel_gamma_pdf(
    gamma: f64,
    rho: f64,
    a: f64,
    delta_b: f64,
    x: f64,
    out: *mut f64,
) -> c_int {
    guard(|| write_result(pathway::superstat::bessel_gamma_pdf(gamma, rho, a, delta_b, x), out))
}
