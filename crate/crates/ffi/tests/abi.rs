use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use polarmult_ffi::*;

fn parse(json: &str) -> (PmStatus, *mut PmProblem) {
    let src = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    let st = unsafe { pm_problem_parse(src.as_ptr(), &mut h) };
    (st, h)
}

fn run_cmd(h: *const PmProblem, cmd: &str, flags: Option<&PmFlags>) -> (PmStatus, serde_json::Value) {
    let c = CString::new(cmd).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { pm_run(h, c.as_ptr(), flags.map_or(ptr::null(), |f| f as *const _), &mut out) };
    if out.is_null() {
        return (st, serde_json::Value::Null);
    }
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { pm_string_free(out) };
    (st, serde_json::from_str(&text).unwrap())
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pm_last_error()) }.to_str().unwrap().to_owned()
}

fn flags() -> PmFlags {
    PmFlags { seed: -1, vmax: -1, nmax: -1, margin: -1, budget: -1, assume_equidimensional: false, no_timings: true }
}

#[test]
fn polar_round_trip() {
    let (st, h) = parse(r#"{"base_vars":["u"],"poly_vars":["x","y"]}"#);
    assert_eq!(st, PmStatus::Ok);
    let (st, rep) = run_cmd(h, "polar", Some(&flags()));
    assert_eq!(st, PmStatus::Ok);
    assert_eq!(rep["vectors"]["polar"], serde_json::json!([0, 1, 0]));
    unsafe { pm_problem_free(h) };
}

#[test]
fn verdict_through_handle() {
    let (st, h) = parse(r#"{"base_vars":["u"],"poly_vars":["x"],"subalgebra_gens":["u*x"]}"#);
    assert_eq!(st, PmStatus::Ok);
    let (st, rep) = run_cmd(h, "check-integral", None);
    assert_eq!(st, PmStatus::Ok);
    assert_eq!(rep["verdict"]["outcome"], "Fails");
    unsafe { pm_problem_free(h) };
}

#[test]
fn error_codes() {
    let (st, h) = parse("{not json");
    assert_eq!(st, PmStatus::Input);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    let (st, _) = unsafe {
        let mut h = ptr::null_mut();
        (pm_problem_parse(ptr::null(), &mut h), h)
    };
    assert_eq!(st, PmStatus::NullPointer);

    let (_, h) = parse(r#"{"base_vars":["u"],"poly_vars":["x"]}"#);
    let (st, rep) = run_cmd(h, "no-such-command", None);
    assert_eq!(st, PmStatus::UnknownCommand);
    assert!(rep.is_null());
    assert!(last_error().contains("no-such-command"));

    let (st, _) = run_cmd(ptr::null(), "polar", None);
    assert_eq!(st, PmStatus::NullPointer);
    unsafe { pm_problem_free(h) };

    let (_, h) = parse(r#"{"base_vars":["u"],"poly_vars":["x"],"relations":["x^9"]}"#);
    let f = PmFlags { vmax: 12, ..flags() };
    let (st, rep) = run_cmd(h, "polar", Some(&f));
    assert_eq!(st, PmStatus::Numerical);
    assert_eq!(rep["error"]["kind"], "unstable");
    unsafe { pm_problem_free(h) };
}

#[test]
fn selftest_without_problem() {
    let (st, rep) = run_cmd(ptr::null(), "selftest", Some(&flags()));
    assert_eq!(st, PmStatus::Ok, "{rep}");
}

#[test]
fn version_and_free_null() {
    let v = unsafe { CStr::from_ptr(pm_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    unsafe {
        pm_problem_free(ptr::null_mut());
        pm_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_abi_and_compiles() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/polarmult.h");
    let header = std::fs::read_to_string(&path).unwrap();
    for sym in ["pm_problem_parse", "pm_problem_free", "pm_run", "pm_string_free", "pm_last_error", "pm_version", "PmStatus", "PmFlags", "PmProblem"] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&path).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
