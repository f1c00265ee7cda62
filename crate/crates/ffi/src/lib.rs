//! C ABI over the closed-form evaluators.
//!
//! Channels and parameter sets are opaque heap handles created by the
//! `*_new` functions and released with the matching `*_free`. Every fallible
//! call returns a [`SelbergStatus`] and writes its result through an out
//! pointer. The message of the last failure on the calling thread is
//! available from [`selberg_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use num_complex::Complex64;
use selberg::channel::Channel;
use selberg::closedform::{self, Params, SelbergParams};
use selberg::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelbergStatus {
    Ok = 0,
    NullPointer = 1,
    DimensionMismatch = 2,
    InvalidChannel = 3,
    InvalidParameter = 4,
    Precondition = 5,
    PoleProximity = 6,
    NonGeneric = 7,
    NonConvergence = 8,
    Unsupported = 9,
    Input = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelbergComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for SelbergComplex {
    fn from(z: Complex64) -> Self {
        SelbergComplex { re: z.re, im: z.im }
    }
}

impl From<SelbergComplex> for Complex64 {
    fn from(z: SelbergComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Opaque channel handle.
pub struct SelbergChannel(Channel);

/// Opaque parameter handle: the pairings `(λ, α_i)` and `κ`.
pub struct SelbergParamSet(Params);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn status_of(e: &Error) -> SelbergStatus {
    match e {
        Error::DimensionMismatch { .. } => SelbergStatus::DimensionMismatch,
        Error::InvalidChannel(_) => SelbergStatus::InvalidChannel,
        Error::InvalidParameter(_) => SelbergStatus::InvalidParameter,
        Error::Precondition(_) => SelbergStatus::Precondition,
        Error::PoleProximity { .. } => SelbergStatus::PoleProximity,
        Error::NonGeneric(_) => SelbergStatus::NonGeneric,
        Error::NonConvergence(_) => SelbergStatus::NonConvergence,
        Error::Unsupported(_) => SelbergStatus::Unsupported,
        Error::Input(_) => SelbergStatus::Input,
    }
}

fn fail(status: SelbergStatus, msg: String) -> SelbergStatus {
    LAST_ERROR.with(|m| *m.borrow_mut() = msg);
    status
}

/// Runs `f`, maps errors and panics to status codes and records the message.
fn guard(f: impl FnOnce() -> Result<(), FfiError>) -> SelbergStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SelbergStatus::Ok,
        Ok(Err(FfiError::Core(e))) => fail(status_of(&e), e.to_string()),
        Ok(Err(FfiError::Null(what))) => {
            fail(SelbergStatus::NullPointer, format!("null pointer: {what}"))
        }
        Err(_) => fail(SelbergStatus::Panic, "internal panic".into()),
    }
}

enum FfiError {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for FfiError {
    fn from(e: Error) -> Self {
        FfiError::Core(e)
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, FfiError> {
    p.as_mut().ok_or(FfiError::Null(what))
}

unsafe fn get<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, FfiError> {
    p.as_ref().ok_or(FfiError::Null(what))
}

unsafe fn array<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], FfiError> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(FfiError::Null(what))
    } else {
        Ok(slice::from_raw_parts(p, len))
    }
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn selberg_status_name(status: SelbergStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SelbergStatus::Ok => c"ok",
        SelbergStatus::NullPointer => c"null pointer",
        SelbergStatus::DimensionMismatch => c"dimension mismatch",
        SelbergStatus::InvalidChannel => c"invalid channel",
        SelbergStatus::InvalidParameter => c"invalid parameter",
        SelbergStatus::Precondition => c"precondition violated",
        SelbergStatus::PoleProximity => c"gamma pole proximity",
        SelbergStatus::NonGeneric => c"non-generic parameters",
        SelbergStatus::NonConvergence => c"no convergence",
        SelbergStatus::Unsupported => c"unsupported",
        SelbergStatus::Input => c"input error",
        SelbergStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len − 1` bytes) and returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn selberg_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|m| {
        let msg = m.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Creates a channel from `len` indices `i_j ∈ [1, n+1]`.
///
/// # Safety
/// `indices` must point to `len` values (or be null when `len == 0`);
/// the out pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn selberg_channel_new(
    indices: *const usize,
    len: usize,
    n: usize,
    out_channel: *mut *mut SelbergChannel,
) -> SelbergStatus {
    guard(|| {
        let slot = out(out_channel, "out_channel")?;
        *slot = ptr::null_mut();
        let idx = array(indices, len, "indices")?.to_vec();
        *slot = Box::into_raw(Box::new(SelbergChannel(Channel::new(idx, n)?)));
        Ok(())
    })
}

/// # Safety
/// `channel` must be null or come from [`selberg_channel_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn selberg_channel_free(channel: *mut SelbergChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Creates a parameter set from the `n` pairings `(λ, α_i)` and `κ`.
///
/// # Safety
/// `pairings` must point to `len` values (or be null when `len == 0`);
/// the out pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn selberg_params_new(
    pairings: *const f64,
    len: usize,
    kappa: f64,
    out_params: *mut *mut SelbergParamSet,
) -> SelbergStatus {
    guard(|| {
        let slot = out(out_params, "out_params")?;
        *slot = ptr::null_mut();
        let v = array(pairings, len, "pairings")?.to_vec();
        *slot = Box::into_raw(Box::new(SelbergParamSet(Params::new(v, kappa)?)));
        Ok(())
    })
}

/// # Safety
/// `params` must be null or come from [`selberg_params_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn selberg_params_free(params: *mut SelbergParamSet) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Closed-form value of the channel integral.
///
/// # Safety
/// All pointers must be valid handles or out locations.
#[no_mangle]
pub unsafe extern "C" fn selberg_generalized(
    channel: *const SelbergChannel,
    params: *const SelbergParamSet,
    out_value: *mut SelbergComplex,
) -> SelbergStatus {
    guard(|| {
        let (ch, p) = (get(channel, "channel")?, get(params, "params")?);
        let slot = out(out_value, "out_value")?;
        *slot = closedform::generalized_selberg(&ch.0, &p.0)?.into();
        Ok(())
    })
}

/// Leading exponent `μ_N` of an all-equal channel.
///
/// # Safety
/// All pointers must be valid handles or out locations.
#[no_mangle]
pub unsafe extern "C" fn selberg_monomial_exponent(
    channel: *const SelbergChannel,
    params: *const SelbergParamSet,
    out_value: *mut SelbergComplex,
) -> SelbergStatus {
    guard(|| {
        let (ch, p) = (get(channel, "channel")?, get(params, "params")?);
        let slot = out(out_value, "out_value")?;
        *slot = closedform::monomial_exponent(&ch.0, &p.0)?.into();
        Ok(())
    })
}

/// Loop Beta integral `(1 − e^{2πia}) B(a, b)`.
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn selberg_contour_beta(
    a: SelbergComplex,
    b: SelbergComplex,
    out_value: *mut SelbergComplex,
) -> SelbergStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = closedform::contour_beta(a.into(), b.into())?.into();
        Ok(())
    })
}

/// Classical Selberg integral over the ordered simplex `0 < t₁ < … < t_m < 1`.
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn selberg_classical(
    a: f64,
    b: f64,
    c: f64,
    m: usize,
    out_value: *mut SelbergComplex,
) -> SelbergStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = closedform::classical_selberg_ordered(&SelbergParams::real(a, b, c, m))?.into();
        Ok(())
    })
}
