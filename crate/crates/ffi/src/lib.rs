//! C ABI over `dpinv`.
//!
//! Every fallible call returns a [`DpStatus`] and writes results through
//! out-pointers. On failure the message is kept per thread and can be read
//! with [`dpinv_last_error`]. Strings handed out by this library must be
//! released with [`dpinv_string_free`]; handles with their own `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dpinv::cli::claims::{parse_manifest, run_claim, BUILTIN_MANIFEST};
use dpinv::cli::query::{evaluate, parse_query, Element};
use dpinv::invsolver::{
    build_module, group_invariants, lie_invariants, Caps, Generators, GradedModuleSpec, ModuleKind,
    VcDegree,
};
use dpinv::{DpError, PrimeCtx};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrime = 3,
    CapExceeded = 4,
    Parse = 5,
    UnknownClaim = 6,
    Unsupported = 7,
    Panic = 8,
}

/// Matrix module families accepted by [`dpinv_module_new`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpModuleKind {
    /// Degree `r` part of the truncated polynomial ring `A_s`.
    As = 0,
    /// Degree `r` part of `D_s`.
    Ds = 1,
    /// The tensor power of `gl_n`; `s` is ignored.
    Tensor = 2,
}

/// A module with its basis; opaque to C.
pub struct DpModule(GradedModuleSpec);

/// An element of a polynomial or divided power algebra; opaque to C.
pub struct DpElement(Element);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &DpError) -> DpStatus {
    match e {
        DpError::NotPrime(_) => DpStatus::NotPrime,
        DpError::CapExceeded { .. } => DpStatus::CapExceeded,
        DpError::Parse(_) => DpStatus::Parse,
        DpError::UnknownClaim(_) => DpStatus::UnknownClaim,
        DpError::Unsupported(_) => DpStatus::Unsupported,
        _ => DpStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (DpStatus, String)>) -> DpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DpStatus::Panic
        }
    }
}

fn lib(e: DpError) -> (DpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (DpStatus, String) {
    (DpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DpStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DpStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn caps(max_basis: usize) -> Caps {
    let mut c = Caps::default();
    if max_basis > 0 {
        c.max_basis = max_basis;
    }
    c
}

/// Library version as a static string. Do not free.
#[no_mangle]
pub extern "C" fn dpinv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The caller
/// owns the returned string.
#[no_mangle]
pub extern "C" fn dpinv_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the degree-`r` piece of a matrix module for `n x n` matrices.
/// `max_basis = 0` keeps the default cap.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_module_new(
    kind: DpModuleKind,
    p: u64,
    n: usize,
    s: u32,
    r: u32,
    max_basis: usize,
    out: *mut *mut DpModule,
) -> DpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let k = match kind {
            DpModuleKind::As => ModuleKind::Asr { n, s, r },
            DpModuleKind::Ds => ModuleKind::Dsr { n, s, r },
            DpModuleKind::Tensor => ModuleKind::Tensor { n, r },
        };
        let ctx = PrimeCtx::new(p).map_err(lib)?;
        let m = build_module(k, ctx, &caps(max_basis)).map_err(lib)?;
        *out = Box::into_raw(Box::new(DpModule(m)));
        Ok(())
    })
}

/// Builds the `D_s` piece of total degree `degree` in `m1` vectors and
/// `m2` covectors of dimension `n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_module_new_vec_covec(
    p: u64,
    n: usize,
    m1: usize,
    m2: usize,
    s: u32,
    degree: u32,
    max_basis: usize,
    out: *mut *mut DpModule,
) -> DpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let k = ModuleKind::VecCovec {
            n,
            m1,
            m2,
            s,
            degree: VcDegree::Total(degree),
        };
        let ctx = PrimeCtx::new(p).map_err(lib)?;
        let m = build_module(k, ctx, &caps(max_basis)).map_err(lib)?;
        *out = Box::into_raw(Box::new(DpModule(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpinv_module_free(m: *mut DpModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

unsafe fn module_query(
    m: *const DpModule,
    out: *mut usize,
    f: impl FnOnce(&GradedModuleSpec) -> usize,
) -> DpStatus {
    guard(|| {
        if m.is_null() {
            return Err(null("module"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        *out = f(&(*m).0);
        Ok(())
    })
}

/// Dimension of the module.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_module_dim(m: *const DpModule, out: *mut usize) -> DpStatus {
    module_query(m, out, |m| m.dim())
}

/// Dimension of the `GL_n`-invariants.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_module_group_invariants(m: *const DpModule, out: *mut usize) -> DpStatus {
    module_query(m, out, |m| group_invariants(m).dim())
}

/// Dimension of the `gl_n`-invariants.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_module_lie_invariants(m: *const DpModule, out: *mut usize) -> DpStatus {
    module_query(m, out, |m| lie_invariants(m, &Generators::All).dim())
}

/// Evaluates a named invariant such as `"div e[2,1]"` or `"bracket[1,2]"`.
///
/// # Safety
/// `query` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_element_new(
    query: *const c_char,
    p: u64,
    n: usize,
    out: *mut *mut DpElement,
) -> DpStatus {
    guard(|| {
        let q = str_arg(query, "query")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ctx = PrimeCtx::new(p).map_err(lib)?;
        let e = evaluate(&parse_query(q).map_err(lib)?, n, ctx).map_err(lib)?;
        *out = Box::into_raw(Box::new(DpElement(e)));
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpinv_element_free(e: *mut DpElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Canonical text of the element. Free with [`dpinv_string_free`].
///
/// # Safety
/// `e` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_element_to_string(e: *const DpElement, out: *mut *mut c_char) -> DpStatus {
    guard(|| {
        if e.is_null() {
            return Err(null("element"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        *out = out_string((*e).0.to_string());
        Ok(())
    })
}

/// Whether a divided element lies in `D_s`. Ordinary polynomials are
/// rejected with `Unsupported`.
///
/// # Safety
/// `e` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_element_in_ds(e: *const DpElement, s: u32, out: *mut bool) -> DpStatus {
    guard(|| {
        if e.is_null() {
            return Err(null("element"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        match &(*e).0 {
            Element::Divided(f) => {
                *out = f.is_in_ds(s);
                Ok(())
            }
            Element::Ordinary(_) => Err((
                DpStatus::Unsupported,
                "D_s membership is defined for divided elements".into(),
            )),
        }
    })
}

/// Runs one registered claim. `detail` may be null; otherwise it receives
/// a string to free with [`dpinv_string_free`].
///
/// # Safety
/// `id` must be a nul-terminated string; `pass` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dpinv_verify_claim(
    id: *const c_char,
    pass: *mut bool,
    detail: *mut *mut c_char,
) -> DpStatus {
    guard(|| {
        let id = str_arg(id, "id")?;
        if pass.is_null() {
            return Err(null("pass"));
        }
        let manifest = parse_manifest(BUILTIN_MANIFEST).map_err(lib)?;
        let claim = manifest.find(id).map_err(lib)?;
        let v = run_claim(claim, &Caps::default());
        *pass = v.pass;
        if !detail.is_null() {
            *detail = out_string(v.detail);
        }
        Ok(())
    })
}
