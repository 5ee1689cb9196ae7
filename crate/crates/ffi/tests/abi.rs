use std::ffi::{c_char, CStr, CString};
use std::ptr;

use toricmirror_ffi::*;

const F2: &str = include_str!("../../../fixtures/f2.json");
const CHAIN3: &str = include_str!("../../../fixtures/chain3.json");

fn last_error() -> String {
    unsafe { CStr::from_ptr(tm_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    tm_string_free(s);
    out
}

fn context(doc: &str) -> *mut TmContext {
    let doc = CString::new(doc).unwrap();
    let mut ctx = ptr::null_mut();
    let status = unsafe { tm_context_new(doc.as_ptr(), -1, &mut ctx) };
    assert_eq!(status, TmStatus::Ok, "{}", last_error());
    ctx
}

fn engine(ctx: *const TmContext, order: &str) -> *mut TmEngine {
    let order = CString::new(order).unwrap();
    let mut e = ptr::null_mut();
    let status = unsafe { tm_engine_new(ctx, order.as_ptr(), &mut e) };
    assert_eq!(status, TmStatus::Ok, "{}", last_error());
    e
}

#[test]
fn context_queries() {
    let ctx = context(F2);
    let (mut rays, mut vars, mut semi) = (0usize, 0usize, false);
    unsafe {
        assert_eq!(tm_context_num_rays(ctx, &mut rays), TmStatus::Ok);
        assert_eq!(tm_context_num_vars(ctx, &mut vars), TmStatus::Ok);
        assert_eq!(tm_context_is_semi_fano(ctx, &mut semi), TmStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(tm_context_psi_json(ctx, &mut s), TmStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["c1"], serde_json::json!([0, 2]));
        assert_eq!(v["psi_matrix"][1], serde_json::json!([-2, 1]));
        tm_context_free(ctx);
    }
    assert_eq!((rays, vars, semi), (4, 2, true));
}

#[test]
fn delta_and_open_invariants() {
    let ctx = context(CHAIN3);
    let e = engine(ctx, "6");
    unsafe {
        // the context may go first; the engine shares its data
        tm_context_free(ctx);
        let mut s = ptr::null_mut();
        assert_eq!(tm_engine_delta_json(e, 0, &mut s), TmStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        let exps: Vec<_> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["exponent"].clone())
            .collect();
        assert_eq!(
            exps,
            [
                serde_json::json!([1, 0, 0, 0, 0, 0]),
                serde_json::json!([1, 1, 0, 0, 0, 0]),
                serde_json::json!([1, 1, 1, 0, 0, 0]),
            ]
        );
        let alpha = [1, 2, 1, 0, 0, 0];
        assert_eq!(
            tm_engine_open_gw(e, 1, alpha.as_ptr(), 6, &mut s),
            TmStatus::Ok
        );
        assert_eq!(take(s), "1");
        let alpha = [2, 2, 1, 0, 0, 0];
        assert_eq!(
            tm_engine_open_gw(e, 1, alpha.as_ptr(), 6, &mut s),
            TmStatus::Ok
        );
        assert_eq!(take(s), "0");
        tm_engine_free(e);
    }
}

#[test]
fn series_documents() {
    let ctx = context(F2);
    let e = engine(ctx, "5/2");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(tm_engine_g_json(e, 1, &mut s), TmStatus::Ok);
        let g: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(g["terms"][1]["num"].to_string(), "3");
        assert_eq!(g["terms"][1]["den"].to_string(), "2");
        assert_eq!(tm_engine_mirror_map_json(e, true, &mut s), TmStatus::Ok);
        let units: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(units.as_array().unwrap().len(), 2);
        for tilde in [false, true] {
            assert_eq!(tm_engine_potential_json(e, tilde, &mut s), TmStatus::Ok);
            let w: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
            assert_eq!(w.as_array().unwrap().len(), 4);
        }
        tm_engine_free(e);
        tm_context_free(ctx);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut ctx = ptr::null_mut();
        let bad = CString::new("{not json").unwrap();
        assert_eq!(tm_context_new(bad.as_ptr(), -1, &mut ctx), TmStatus::Parse);
        assert!(!last_error().is_empty());
        assert!(ctx.is_null());

        let open =
            CString::new(r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2]]}"#)
                .unwrap();
        assert_eq!(
            tm_context_new(open.as_ptr(), -1, &mut ctx),
            TmStatus::Validation
        );
        assert_eq!(
            tm_context_new(ptr::null(), -1, &mut ctx),
            TmStatus::NullPointer
        );

        let f3 = CString::new(
            r#"{"dim":2,"rays":[[1,0],[0,1],[-1,3],[0,-1]],"max_cones":[[0,1],[1,2],[2,3],[3,0]]}"#,
        )
        .unwrap();
        assert_eq!(tm_context_new(f3.as_ptr(), -1, &mut ctx), TmStatus::Ok);
        let order = CString::new("3").unwrap();
        let mut e = ptr::null_mut();
        assert_eq!(
            tm_engine_new(ctx, order.as_ptr(), &mut e),
            TmStatus::NotSemiFano
        );
        assert!(last_error().contains("semi-Fano"));
        tm_context_free(ctx);

        let ctx = context(F2);
        let e = engine(ctx, "3");
        let mut s = ptr::null_mut();
        assert_eq!(tm_engine_g_json(e, 7, &mut s), TmStatus::InvalidArgument);
        let alpha = [9, 0];
        assert_eq!(
            tm_engine_open_gw(e, 1, alpha.as_ptr(), 2, &mut s),
            TmStatus::OutOfOrder
        );
        assert_eq!(
            tm_engine_open_gw(e, 1, alpha.as_ptr(), 1, &mut s),
            TmStatus::InvalidArgument
        );
        let invalid = [0xffu8, 0];
        let mut e2 = ptr::null_mut();
        assert_eq!(
            tm_engine_new(ctx, invalid.as_ptr().cast(), &mut e2),
            TmStatus::InvalidUtf8
        );
        assert_eq!(
            tm_context_num_rays(ctx, ptr::null_mut()),
            TmStatus::NullPointer
        );
        tm_engine_free(e);
        tm_context_free(ctx);
        tm_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(tm_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/toricmirror.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for name in exports {
        assert!(
            header.contains(&format!(" {name}(")) || header.contains(&format!("*{name}(")),
            "{name}"
        );
    }
    assert!(header.contains("TM_STATUS_NOT_SEMI_FANO = 5"));
}
