//! C ABI over the command layer. Problems are opaque handles; results are
//! JSON reports owned by the library until released with `pm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polarmult::cli::{exit_code, run, Command, Flags, ProblemDescription};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    /// Unstable window, non-integer coefficient, genericity failure, inconsistency or inconclusive verdict.
    Numerical = 1,
    /// Malformed or unsupported input.
    Input = 2,
    BudgetExceeded = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    UnknownCommand = 6,
    Panic = 7,
}

impl PmStatus {
    fn from_exit(code: i32) -> Self {
        match code {
            0 => PmStatus::Ok,
            1 => PmStatus::Numerical,
            3 => PmStatus::BudgetExceeded,
            _ => PmStatus::Input,
        }
    }
}

/// Overrides for a run. Negative integers leave the document's value in place.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PmFlags {
    pub seed: i64,
    pub vmax: i64,
    pub nmax: i64,
    pub margin: i64,
    pub budget: i64,
    pub assume_equidimensional: bool,
    pub no_timings: bool,
}

impl From<&PmFlags> for Flags {
    fn from(f: &PmFlags) -> Self {
        let opt = |x: i64| (x >= 0).then_some(x);
        Flags {
            json: true,
            seed: opt(f.seed).map(|x| x as u64),
            vmax: opt(f.vmax),
            nmax: opt(f.nmax),
            margin: opt(f.margin).map(|x| x as usize),
            assume_equidimensional: f.assume_equidimensional,
            budget: opt(f.budget).map(|x| x as u64),
            no_timings: f.no_timings,
        }
    }
}

/// Parsed and validated problem description.
pub struct PmProblem {
    json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: PmStatus, msg: impl Into<String>) -> PmStatus {
    set_error(msg);
    status
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, PmStatus> {
    if p.is_null() {
        return Err(fail(PmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(PmStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn guarded(f: impl FnOnce() -> PmStatus) -> PmStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(PmStatus::Panic, "internal panic"))
}

/// Parses a JSON problem description. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_problem_parse(json: *const c_char, out: *mut *mut PmProblem) -> PmStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PmStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let src = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match ProblemDescription::parse(src) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PmProblem { json: p.to_json() }));
                PmStatus::Ok
            }
            Err(e) => fail(PmStatus::from_exit(exit_code(&e)), e.to_string()),
        }
    })
}

/// Releases a handle from `pm_problem_parse`. Null is ignored.
///
/// # Safety
/// `p` must come from `pm_problem_parse` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pm_problem_free(p: *mut PmProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Runs `command` (e.g. "polar", "check-integral", "selftest") and stores the
/// JSON report in `*out`. The report is produced for failing runs too; the
/// status mirrors the command-line exit code. `problem` may be null only for
/// "selftest"; `flags` may be null for defaults.
///
/// # Safety
/// Pointers must be valid or null as described; `command` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pm_run(
    problem: *const PmProblem,
    command: *const c_char,
    flags: *const PmFlags,
    out: *mut *mut c_char,
) -> PmStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PmStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(command) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let cmd: Command = match serde_json::from_value(serde_json::Value::String(name.into())) {
            Ok(c) => c,
            Err(_) => return fail(PmStatus::UnknownCommand, format!("unknown command '{name}'")),
        };
        if problem.is_null() && cmd != Command::Selftest {
            return fail(PmStatus::NullPointer, "null problem handle");
        }
        let input = problem.as_ref().map(|p| p.json.as_str());
        let flags = flags.as_ref().map(Flags::from).unwrap_or(Flags { json: true, ..Flags::default() });
        let (code, text) = run(cmd, input, &flags);
        let status = PmStatus::from_exit(code);
        if status != PmStatus::Ok {
            let msg = serde_json::from_str::<serde_json::Value>(&text)
                .ok()
                .and_then(|v| v["error"]["message"].as_str().map(String::from))
                .unwrap_or_else(|| format!("{} exited with code {code}", cmd.name()));
            set_error(msg);
        }
        *out = CString::new(text).map(CString::into_raw).unwrap_or(ptr::null_mut());
        status
    })
}

/// Releases a string returned by `pm_run`. Null is ignored.
///
/// # Safety
/// `s` must come from `pm_run` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or "" if none.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
