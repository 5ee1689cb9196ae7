//! C ABI for the toricmirror engine.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Every fallible call returns a [`TmStatus`];
//! on failure a message is available from [`tm_last_error`] on the same
//! thread. Strings handed out by the library are released with
//! [`tm_string_free`]. Ray indices are 0-based. Series are returned as JSON
//! documents with exact `num`/`den` coefficients.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use serde_json::{json, Value};
use toricmirror::cli::parse_order;
use toricmirror::coords::CurveCoordinates;
use toricmirror::{
    parse_fan, CurveClass, DiscClass, Error, HoriVafaForm, MirrorEngine, QSeries, ToricContext,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    NotSemiFano = 5,
    InvalidArgument = 6,
    OutOfOrder = 7,
    Panic = 99,
}

/// A validated fan with its intersection data.
pub struct TmContext {
    ctx: Arc<ToricContext>,
    coords: CurveCoordinates,
}

/// Series computations on a semi-Fano context up to a fixed order.
pub struct TmEngine {
    engine: MirrorEngine,
    coords: CurveCoordinates,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(TmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Malformed(_) => TmStatus::Parse,
            Error::NonPrimitiveRay { .. }
            | Error::DuplicateRay { .. }
            | Error::ConeIndexOutOfRange { .. }
            | Error::NonUnimodular { .. }
            | Error::UnusedRay(_)
            | Error::WallSharing { .. }
            | Error::Disconnected
            | Error::NonProjective
            | Error::UnsupportedDimension(_) => TmStatus::Validation,
            Error::NotSemiFano { .. } => TmStatus::NotSemiFano,
            Error::OutOfOrder { .. } => TmStatus::OutOfOrder,
            _ => TmStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TmStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TmStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(TmStatus::NullPointer, "null pointer argument".into())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TmStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn emit<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(TmStatus::Panic, "interior NUL".into()))?;
    emit(out, c.into_raw())
}

fn series_json(coords: &CurveCoordinates, f: &QSeries) -> String {
    serde_json::to_string(&coords.to_display(f).to_record()).expect("records serialize")
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn tm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a fan document. `basis_cone < 0` picks the default.
///
/// # Safety
/// `fan_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_context_new(
    fan_json: *const c_char,
    basis_cone: i64,
    out: *mut *mut TmContext,
) -> TmStatus {
    guard(|| {
        let doc = text(fan_json)?;
        let fan = parse_fan(doc)?;
        let cone = usize::try_from(basis_cone).ok();
        let ctx = Arc::new(ToricContext::new(fan, cone)?);
        let coords = CurveCoordinates::for_context(&ctx)?;
        emit(out, Box::into_raw(Box::new(TmContext { ctx, coords })))
    })
}

/// # Safety
/// `ctx` must be null or a live context handle.
#[no_mangle]
pub unsafe extern "C" fn tm_context_free(ctx: *mut TmContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_context_num_rays(ctx: *const TmContext, out: *mut usize) -> TmStatus {
    guard(|| emit(out, borrow(ctx)?.ctx.num_rays()))
}

/// Rank of H_2, the number of Novikov variables.
///
/// # Safety
/// `ctx` must be a live context handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_context_num_vars(ctx: *const TmContext, out: *mut usize) -> TmStatus {
    guard(|| emit(out, borrow(ctx)?.ctx.num_vars()))
}

/// # Safety
/// `ctx` must be a live context handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_context_is_semi_fano(
    ctx: *const TmContext,
    out: *mut bool,
) -> TmStatus {
    guard(|| emit(out, borrow(ctx)?.ctx.is_semi_fano()))
}

/// Intersection matrix `P[l][k] = D_l·Psi_k` and `c1`, as JSON.
///
/// # Safety
/// `ctx` must be a live context handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_context_psi_json(
    ctx: *const TmContext,
    out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let c = &borrow(ctx)?.ctx;
        let v = json!({ "psi_matrix": c.psi_matrix(), "c1": c.c1(), "basis_cone": c.basis_cone() });
        emit_string(out, v.to_string())
    })
}

/// Builds an engine truncated at `order` (`"8"` or `"7/2"`). The context
/// stays owned by the caller and may be freed independently.
///
/// # Safety
/// `ctx` must be a live context handle, `order` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_new(
    ctx: *const TmContext,
    order: *const c_char,
    out: *mut *mut TmEngine,
) -> TmStatus {
    guard(|| {
        let c = borrow(ctx)?;
        let order = parse_order(text(order)?)?;
        let engine = MirrorEngine::new(c.ctx.clone(), order)?;
        let handle = TmEngine {
            engine,
            coords: c.coords.clone(),
        };
        emit(out, Box::into_raw(Box::new(handle)))
    })
}

/// # Safety
/// `engine` must be null or a live engine handle.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_free(engine: *mut TmEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// `g_ray` in the mirror variables, as a series record.
///
/// # Safety
/// `engine` must be a live engine handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_g_json(
    engine: *const TmEngine,
    ray: usize,
    out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let e = borrow(engine)?;
        emit_string(out, series_json(&e.coords, e.engine.g(ray)?))
    })
}

/// `delta_ray` in the Kähler variables, as a series record.
///
/// # Safety
/// `engine` must be a live engine handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_delta_json(
    engine: *const TmEngine,
    ray: usize,
    out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let e = borrow(engine)?;
        emit_string(out, series_json(&e.coords, e.engine.delta(ray)?))
    })
}

/// Unit factors of the mirror map (`inverse == false`) or of its inverse,
/// as a JSON array of series records.
///
/// # Safety
/// `engine` must be a live engine handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_mirror_map_json(
    engine: *const TmEngine,
    inverse: bool,
    out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let e = borrow(engine)?;
        let map = if inverse {
            e.engine.inverse_mirror_map()
        } else {
            e.engine.mirror_map()
        };
        let units: Vec<Value> = e
            .coords
            .map_units(map)?
            .iter()
            .map(|u| serde_json::to_value(u.to_record()).expect("records serialize"))
            .collect();
        emit_string(out, Value::Array(units).to_string())
    })
}

/// The disc potential (`tilde == false`) or the transformed Hori–Vafa
/// potential, as a JSON array of terms.
///
/// # Safety
/// `engine` must be a live engine handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_potential_json(
    engine: *const TmEngine,
    tilde: bool,
    out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let e = borrow(engine)?;
        let w = if tilde {
            e.engine.hori_vafa(HoriVafaForm::Tilde)
        } else {
            e.engine.disc_potential()
        };
        let v = serde_json::to_string(&w.to_records(&e.coords)).expect("records serialize");
        emit_string(out, v)
    })
}

/// `n_1(beta_ray + alpha)` with `alpha` in the reporting coordinates, as a
/// decimal string `p` or `p/q`.
///
/// # Safety
/// `engine` must be a live engine handle, `alpha` must point to `len`
/// readable values (or be null when `len == 0`), and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tm_engine_open_gw(
    engine: *const TmEngine,
    ray: usize,
    alpha: *const i32,
    len: usize,
    out: *mut *mut c_char,
) -> TmStatus {
    guard(|| {
        let e = borrow(engine)?;
        let r = e.engine.context().num_vars();
        if len != r {
            return Err(Failure(
                TmStatus::InvalidArgument,
                format!("alpha needs {r} entries, got {len}"),
            ));
        }
        let a: &[i32] = if len == 0 {
            &[]
        } else if alpha.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(alpha, len)
        };
        let exp = e.coords.from_display_exponent(a);
        let beta = DiscClass {
            ray,
            curve: CurveClass(exp.into_iter().map(i64::from).collect()),
        };
        emit_string(out, e.engine.open_gw(&beta)?.to_string())
    })
}
