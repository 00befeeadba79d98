//! C ABI over the niemeier library: an opaque context handle, status
//! codes, a per-handle last-error message, and JSON string outputs that
//! callers release with `nm_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use niemeier::context::Context;
use niemeier::export::{expansion_json, lattices_json, report_json};
use niemeier::fourier::IndexMatrix;
use niemeier::verify::{
    certify_congruence, singular_rank_mod_p, theta_kernel_check, verify_identity, Verdict,
};
use niemeier::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NmStatus {
    /// Success.
    NmOk = 0,
    /// A pointer argument was null.
    NmNullPointer = 1,
    /// An argument was malformed (bad degree, bad UTF-8, bad modulus).
    NmInvalidArgument = 2,
    /// The lattice or form identifier is not known.
    NmUnknownLattice = 3,
    /// An enumeration budget or overflow guard fired.
    NmResourceLimit = 4,
    /// The requested verification ran and was refuted.
    NmRefuted = 5,
    /// Any other internal failure; see `nm_last_error`.
    NmInternal = 6,
}

/// Opaque computation context; create with `nm_context_new`, release
/// with `nm_context_free`.
pub struct NmContext {
    inner: Context,
    last_error: Option<CString>,
}

impl NmContext {
    fn set_error(&mut self, msg: String) {
        self.last_error = Some(CString::new(msg).unwrap_or_else(|_| {
            CString::new("error message contained NUL").unwrap()
        }));
    }
}

fn status_of(e: &Error) -> NmStatus {
    match e {
        Error::UnknownLattice(_) | Error::InvalidComponent(_) => NmStatus::NmUnknownLattice,
        Error::BudgetExceeded(_) | Error::EnumerationOverflow(_) => NmStatus::NmResourceLimit,
        _ => NmStatus::NmInternal,
    }
}

/// # Safety
/// `ptr` must be a valid pointer to a pointer slot.
unsafe fn write_out<T>(slot: *mut T, value: T) -> NmStatus {
    if slot.is_null() {
        return NmStatus::NmNullPointer;
    }
    unsafe { slot.write(value) };
    NmStatus::NmOk
}

unsafe fn utf8_arg<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s)
        .unwrap_or_else(|_| CString::new("").unwrap())
        .into_raw()
}

/// Run `f` on the context, translating errors and panics into status
/// codes and recording the message on the handle.
fn guarded<F>(ctx: *mut NmContext, f: F) -> NmStatus
where
    F: FnOnce(&mut NmContext) -> Result<NmStatus, Error>,
{
    let Some(ctx) = (unsafe { ctx.as_mut() }) else {
        return NmStatus::NmNullPointer;
    };
    match catch_unwind(AssertUnwindSafe(|| f(ctx))) {
        Ok(Ok(status)) => status,
        Ok(Err(e)) => {
            let status = status_of(&e);
            ctx.set_error(e.to_string());
            status
        }
        Err(_) => {
            ctx.set_error("internal panic".to_string());
            NmStatus::NmInternal
        }
    }
}

/// Create a context without a disk cache.
///
/// # Safety
/// `out` must point to a writable `NmContext*` slot.
#[no_mangle]
pub unsafe extern "C" fn nm_context_new(out: *mut *mut NmContext) -> NmStatus {
    let ctx = Box::new(NmContext { inner: Context::new(), last_error: None });
    unsafe { write_out(out, Box::into_raw(ctx)) }
}

/// Create a context with an on-disk coefficient cache in `dir`.
///
/// # Safety
/// `dir` must be a NUL-terminated string; `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn nm_context_with_cache(
    dir: *const c_char,
    out: *mut *mut NmContext,
) -> NmStatus {
    let Some(dir) = (unsafe { utf8_arg(dir) }) else {
        return NmStatus::NmInvalidArgument;
    };
    if std::fs::create_dir_all(dir).is_err() {
        return NmStatus::NmInternal;
    }
    match Context::with_cache(Path::new(dir)) {
        Ok(inner) => {
            let ctx = Box::new(NmContext { inner, last_error: None });
            unsafe { write_out(out, Box::into_raw(ctx)) }
        }
        Err(_) => NmStatus::NmInternal,
    }
}

/// Flush any attached cache and release the context.
///
/// # Safety
/// `ctx` must come from `nm_context_new`/`nm_context_with_cache` and
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nm_context_free(ctx: *mut NmContext) {
    if !ctx.is_null() {
        let mut ctx = unsafe { Box::from_raw(ctx) };
        let _ = ctx.inner.flush_cache();
    }
}

/// Message describing the most recent failure on this handle, or an
/// empty string. The pointer is owned by the context and valid until
/// the next failing call.
///
/// # Safety
/// `ctx` must be a valid context pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_last_error(ctx: *const NmContext) -> *const c_char {
    match unsafe { ctx.as_ref() }.and_then(|c| c.last_error.as_ref()) {
        Some(msg) => msg.as_ptr(),
        None => c"".as_ptr(),
    }
}

/// Release a string returned by any `*_json` or coefficient call.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// JSON catalog of the 24 lattices with Gram matrices.
///
/// # Safety
/// `ctx` must be valid; `out_json` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn nm_catalog_json(
    ctx: *mut NmContext,
    out_json: *mut *mut c_char,
) -> NmStatus {
    guarded(ctx, |c| {
        let json = lattices_json(&c.inner.catalog())?;
        Ok(unsafe { write_out(out_json, export_string(json)) })
    })
}

/// JSON theta expansion of `lattice` at `degree` on the Sturm box.
///
/// # Safety
/// `ctx` and `lattice` must be valid; `out_json` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn nm_theta_json(
    ctx: *mut NmContext,
    lattice: *const c_char,
    degree: u8,
    out_json: *mut *mut c_char,
) -> NmStatus {
    let Some(name) = (unsafe { utf8_arg(lattice) }) else {
        return NmStatus::NmInvalidArgument;
    };
    if !(1..=3).contains(&degree) {
        return NmStatus::NmInvalidArgument;
    }
    guarded(ctx, |c| {
        let f = c.inner.theta(name, degree)?;
        Ok(unsafe { write_out(out_json, export_string(expansion_json(&f)?)) })
    })
}

/// Decimal string of one theta coefficient; `t` holds
/// (t11, t22, t33, 2*t12, 2*t13, 2*t23), unused slots zero.
///
/// # Safety
/// `ctx`, `lattice` and `t` must be valid; `out_value` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn nm_theta_coefficient(
    ctx: *mut NmContext,
    lattice: *const c_char,
    degree: u8,
    t: *const i64,
    out_value: *mut *mut c_char,
) -> NmStatus {
    let Some(name) = (unsafe { utf8_arg(lattice) }) else {
        return NmStatus::NmInvalidArgument;
    };
    if !(1..=3).contains(&degree) || t.is_null() {
        return NmStatus::NmInvalidArgument;
    }
    let e: [i64; 6] = unsafe { std::slice::from_raw_parts(t, 6) }.try_into().unwrap();
    guarded(ctx, |c| {
        let index = IndexMatrix::decode6(degree, e);
        let f = c.inner.theta(name, degree)?;
        let v = f.get(&index)?;
        Ok(unsafe { write_out(out_value, export_string(v.to_string())) })
    })
}

/// Compare the enumerated theta series against the weight-12 closed
/// form on the Sturm box. `NmOk` when they agree, `NmRefuted` when any
/// coefficient differs.
///
/// # Safety
/// `ctx` and `lattice` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nm_verify_identity(
    ctx: *mut NmContext,
    lattice: *const c_char,
    degree: u8,
) -> NmStatus {
    let Some(name) = (unsafe { utf8_arg(lattice) }) else {
        return NmStatus::NmInvalidArgument;
    };
    if !(1..=3).contains(&degree) {
        return NmStatus::NmInvalidArgument;
    }
    guarded(ctx, |c| {
        let report = verify_identity(&mut c.inner, name, degree)?;
        Ok(if report.verified { NmStatus::NmOk } else { NmStatus::NmRefuted })
    })
}

/// Certify lhs ≡ rhs (mod modulus) for the degree-3 theta series, and
/// return the certificate JSON. `NmOk` = certified, `NmRefuted` =
/// refuted with a witness in the JSON, `NmInternal` = inconclusive.
///
/// # Safety
/// All pointers must be valid; `out_json` a writable slot (may be null
/// when only the status matters).
#[no_mangle]
pub unsafe extern "C" fn nm_certify_congruence(
    ctx: *mut NmContext,
    lhs: *const c_char,
    rhs: *const c_char,
    modulus: u64,
    out_json: *mut *mut c_char,
) -> NmStatus {
    let (Some(lhs), Some(rhs)) = (unsafe { utf8_arg(lhs) }, unsafe { utf8_arg(rhs) }) else {
        return NmStatus::NmInvalidArgument;
    };
    if modulus < 2 {
        return NmStatus::NmInvalidArgument;
    }
    guarded(ctx, |c| {
        let lf = c.inner.theta(lhs, 3)?;
        let rf = c.inner.theta(rhs, 3)?;
        let cert = certify_congruence(lhs, &lf, rhs, &rf, modulus)?;
        if !out_json.is_null() {
            unsafe { write_out(out_json, export_string(report_json(&cert)?)) };
        }
        Ok(match cert.verdict {
            Verdict::Certified => NmStatus::NmOk,
            Verdict::Refuted { .. } => NmStatus::NmRefuted,
            Verdict::Inconclusive { .. } => NmStatus::NmInternal,
        })
    })
}

/// Box-limited mod-p singular rank report as JSON. `NmOk` when the form
/// is singular of corank one on the box, `NmRefuted` otherwise.
///
/// # Safety
/// All pointers must be valid; `out_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn nm_singular_rank(
    ctx: *mut NmContext,
    lattice: *const c_char,
    p: u64,
    out_json: *mut *mut c_char,
) -> NmStatus {
    let Some(name) = (unsafe { utf8_arg(lattice) }) else {
        return NmStatus::NmInvalidArgument;
    };
    guarded(ctx, |c| {
        let form = c.inner.extended_theta3(name)?;
        let report = singular_rank_mod_p(name, &form, p)?;
        if !out_json.is_null() {
            unsafe { write_out(out_json, export_string(report_json(&report)?)) };
        }
        Ok(if report.is_singular_of_corank_one() {
            NmStatus::NmOk
        } else {
            NmStatus::NmRefuted
        })
    })
}

/// Check Θ(theta series) ≡ 0 (mod p) on the extended degree-2 box.
///
/// # Safety
/// `ctx` and `lattice` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nm_theta_kernel(
    ctx: *mut NmContext,
    lattice: *const c_char,
    p: u64,
) -> NmStatus {
    let Some(name) = (unsafe { utf8_arg(lattice) }) else {
        return NmStatus::NmInvalidArgument;
    };
    if p < 3 || p % 2 == 0 {
        return NmStatus::NmInvalidArgument;
    }
    guarded(ctx, |c| {
        let form = c.inner.formula_theta(name, 2)?;
        let report = theta_kernel_check(name, &form, p)?;
        Ok(if report.passes { NmStatus::NmOk } else { NmStatus::NmRefuted })
    })
}
