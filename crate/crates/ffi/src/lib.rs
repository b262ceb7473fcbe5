//! C ABI over the fairrank samplers.
//!
//! Every function returns an [`FrStatus`]; on failure a message is kept per
//! thread and can be read with [`fr_last_error`]. Group indices are 0-based.
//! Samplers are opaque handles created by [`fr_sampler_new`] and released by
//! [`fr_sampler_free`]. A handle must not be used from two threads at once.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fairrank::assembly::{sample_assignment, RepresentationSampler};
use fairrank::cli::stream_rng;
use fairrank::{count_fair_representations, Backend, Error, FairnessConstraints, WalkConfig};
use rand_chacha::ChaCha8Rng;

pub const FR_BACKEND_DP: u32 = 0;
pub const FR_BACKEND_WALK: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrStatus {
    FrOk = 0,
    FrNullPointer = 1,
    FrInvalidArgument = 2,
    FrInfeasible = 3,
    FrDeltaTooSmall = 4,
    FrRejectionBudget = 5,
    FrBufferTooSmall = 6,
    FrPanic = 7,
    FrInternal = 8,
}

/// Opaque sampler handle.
pub struct FrSampler {
    constraints: FairnessConstraints,
    sampler: RepresentationSampler,
    rng: ChaCha8Rng,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: FrStatus, message: &str) -> FrStatus {
    set_error(message);
    status
}

fn from_error(e: &Error) -> FrStatus {
    let status = match e {
        Error::InfeasibleConstraints(_) | Error::NoFeasiblePoint => FrStatus::FrInfeasible,
        Error::DeltaTooSmall { .. } => FrStatus::FrDeltaTooSmall,
        Error::RejectionBudgetExceeded { .. } => FrStatus::FrRejectionBudget,
        Error::InvalidWalkConfig(_)
        | Error::InvalidArgument(_)
        | Error::InstanceTooLarge { .. } => FrStatus::FrInvalidArgument,
        _ => FrStatus::FrInternal,
    };
    fail(status, &e.to_string())
}

fn guarded(f: impl FnOnce() -> FrStatus) -> FrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(FrStatus::FrPanic, "internal panic"),
    }
}

/// # Safety
/// `lower` and `upper` must each point to `ell` readable values.
unsafe fn read_constraints(
    k: usize,
    ell: usize,
    lower: *const usize,
    upper: *const usize,
) -> Result<FairnessConstraints, FrStatus> {
    if lower.is_null() || upper.is_null() {
        return Err(fail(FrStatus::FrNullPointer, "bounds pointer is null"));
    }
    let lower = std::slice::from_raw_parts(lower, ell).to_vec();
    let upper = std::slice::from_raw_parts(upper, ell).to_vec();
    FairnessConstraints::new(k, lower, upper).map_err(|e| from_error(&e))
}

/// Message for the last failure on this thread; empty after success-only
/// use. Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a sampler for bounds `lower[0..ell]`, `upper[0..ell]` summing to `k`.
///
/// # Safety
/// `lower` and `upper` must point to `ell` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fr_sampler_new(
    k: usize,
    ell: usize,
    lower: *const usize,
    upper: *const usize,
    backend: u32,
    tv_delta: f64,
    seed: u64,
    out: *mut *mut FrSampler,
) -> FrStatus {
    guarded(|| {
        if out.is_null() {
            return fail(FrStatus::FrNullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let backend = match backend {
            FR_BACKEND_DP => Backend::Dp,
            FR_BACKEND_WALK => Backend::Walk,
            other => {
                return fail(
                    FrStatus::FrInvalidArgument,
                    &format!("unknown backend {other}"),
                )
            }
        };
        let constraints = match read_constraints(k, ell, lower, upper) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let mut rng = stream_rng(seed, 0);
        match RepresentationSampler::new(
            &constraints,
            backend,
            &WalkConfig::with_tv_delta(tv_delta),
            &mut rng,
        ) {
            Ok(sampler) => {
                *out = Box::into_raw(Box::new(FrSampler {
                    constraints,
                    sampler,
                    rng,
                }));
                FrStatus::FrOk
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `sampler` must come from [`fr_sampler_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fr_sampler_free(sampler: *mut FrSampler) {
    if !sampler.is_null() {
        drop(Box::from_raw(sampler));
    }
}

/// Writes one group-fair representation (`ell` counts) to `out`.
///
/// # Safety
/// `sampler` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn fr_sampler_sample_representation(
    sampler: *mut FrSampler,
    out: *mut usize,
    len: usize,
) -> FrStatus {
    guarded(|| {
        let Some(s) = sampler.as_mut() else {
            return fail(FrStatus::FrNullPointer, "sampler is null");
        };
        if out.is_null() {
            return fail(FrStatus::FrNullPointer, "out is null");
        }
        if len < s.constraints.ell() {
            return fail(
                FrStatus::FrBufferTooSmall,
                "buffer shorter than the number of groups",
            );
        }
        match s.sampler.sample(&mut s.rng) {
            Ok(x) => {
                std::slice::from_raw_parts_mut(out, x.0.len()).copy_from_slice(&x.0);
                FrStatus::FrOk
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Writes the group of each of the `k` ranks to `out`.
///
/// # Safety
/// `sampler` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn fr_sampler_sample_assignment(
    sampler: *mut FrSampler,
    out: *mut usize,
    len: usize,
) -> FrStatus {
    guarded(|| {
        let Some(s) = sampler.as_mut() else {
            return fail(FrStatus::FrNullPointer, "sampler is null");
        };
        if out.is_null() {
            return fail(FrStatus::FrNullPointer, "out is null");
        }
        if len < s.constraints.k() {
            return fail(FrStatus::FrBufferTooSmall, "buffer shorter than k");
        }
        match s.sampler.sample(&mut s.rng) {
            Ok(x) => {
                let y = sample_assignment(&x, &mut s.rng);
                std::slice::from_raw_parts_mut(out, y.0.len()).copy_from_slice(&y.0);
                FrStatus::FrOk
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Number of group-fair representations as a NUL-terminated decimal
/// string. `required` (if not null) receives the buffer size needed,
/// including the terminator.
///
/// # Safety
/// Bounds must point to `ell` values and `buf` to `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn fr_count_fair_representations(
    k: usize,
    ell: usize,
    lower: *const usize,
    upper: *const usize,
    buf: *mut c_char,
    buf_len: usize,
    required: *mut usize,
) -> FrStatus {
    guarded(|| {
        let constraints = match read_constraints(k, ell, lower, upper) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let digits = count_fair_representations(&constraints).to_string();
        let needed = digits.len() + 1;
        if !required.is_null() {
            *required = needed;
        }
        if buf.is_null() {
            return fail(FrStatus::FrNullPointer, "buf is null");
        }
        if buf_len < needed {
            return fail(FrStatus::FrBufferTooSmall, &format!("need {needed} bytes"));
        }
        ptr::copy_nonoverlapping(digits.as_ptr().cast::<c_char>(), buf, digits.len());
        *buf.add(digits.len()) = 0;
        FrStatus::FrOk
    })
}
