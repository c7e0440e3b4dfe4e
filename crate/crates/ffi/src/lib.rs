//! C interface to the vivisat solver.
//!
//! A `VivisatSolver` handle collects clauses and options; every call to [`vivisat_solve`] runs a
//! fresh solver over all clauses added so far. Functions return `VIVISAT_SAT` (10),
//! `VIVISAT_UNSAT` (20), `VIVISAT_UNKNOWN` (0) or a [`VivisatStatus`] code; negative codes are
//! errors, described by [`vivisat_last_error`]. Panics never cross the boundary: they are
//! reported as `VIVISAT_STATUS_PANIC`.
//!
//! The header `include/vivisat.h` is generated from this file by the build script.
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vivisat::{parse_dimacs, Answer, Formula, Lit, Report, SolveResult, Solver, SolverConfig};

pub const VIVISAT_SAT: i32 = 10;
pub const VIVISAT_UNSAT: i32 = 20;
pub const VIVISAT_UNKNOWN: i32 = 0;

/// Status codes. Everything except `Ok` is negative.
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VivisatStatus {
    Ok = 0,
    NullPointer = -1,
    InvalidArgument = -2,
    ParseError = -3,
    /// A model was requested but the last solve did not answer satisfiable.
    NoModel = -4,
    Panic = -5,
}

/// Opaque solver handle.
pub struct VivisatSolver {
    config: SolverConfig,
    formula: Formula,
    model: Option<Vec<bool>>,
    report: Option<Report>,
    last_error: Option<CString>,
}

struct Failure(VivisatStatus, String);

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(VivisatStatus::InvalidArgument, msg.into())
}

/// Run `f` on the handle, turning failures and panics into status codes and recording the
/// error message.
unsafe fn with_solver(
    s: *mut VivisatSolver,
    f: impl FnOnce(&mut VivisatSolver) -> Result<i32, Failure>,
) -> i32 {
    let Some(solver) = s.as_mut() else {
        return VivisatStatus::NullPointer as i32;
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut *solver)));
    let (code, msg) = match outcome {
        Ok(Ok(code)) => (code, None),
        Ok(Err(Failure(status, msg))) => (status as i32, Some(msg)),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (VivisatStatus::Panic as i32, Some(msg))
        }
    };
    solver.last_error = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no NUL left"));
    code
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            VivisatStatus::NullPointer,
            format!("{what} is NULL"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

/// Create a solver with default options. Free it with [`vivisat_free`].
#[no_mangle]
pub extern "C" fn vivisat_new() -> *mut VivisatSolver {
    Box::into_raw(Box::new(VivisatSolver {
        config: SolverConfig::default(),
        formula: Formula::new(0),
        model: None,
        report: None,
        last_error: None,
    }))
}

/// Destroy a solver. `NULL` is ignored.
///
/// # Safety
/// `s` must be `NULL` or a handle from [`vivisat_new`] that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn vivisat_free(s: *mut VivisatSolver) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vivisat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Set an option by its command-line name without the leading dashes, e.g.
/// `("viv-select", "live++")` or `("seed", "7")`.
///
/// # Safety
/// `s` must be a live handle; `name` and `value` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn vivisat_set_option(
    s: *mut VivisatSolver,
    name: *const c_char,
    value: *const c_char,
) -> i32 {
    with_solver(s, |solver| {
        let name = str_arg(name, "option name")?;
        let value = str_arg(value, "option value")?;
        solver
            .config
            .set_option(name, value)
            .map_err(|e| invalid(e.to_string()))?;
        Ok(VivisatStatus::Ok as i32)
    })
}

/// Limit the number of conflicts per solve; a negative limit removes it.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vivisat_set_conflict_limit(s: *mut VivisatSolver, limit: i64) -> i32 {
    with_solver(s, |solver| {
        solver.config.budget.conflicts = u64::try_from(limit).ok();
        Ok(VivisatStatus::Ok as i32)
    })
}

/// Limit the wall-clock seconds per solve; zero or a negative value removes the limit.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vivisat_set_time_limit(s: *mut VivisatSolver, seconds: f64) -> i32 {
    with_solver(s, |solver| {
        if seconds.is_nan() {
            return Err(invalid("time limit is NaN"));
        }
        solver.config.budget.time_secs = (seconds > 0.0).then_some(seconds);
        Ok(VivisatStatus::Ok as i32)
    })
}

/// Add a clause of `len` signed DIMACS literals (no terminating zero). `lits` may be `NULL`
/// when `len` is zero, which adds the empty clause.
///
/// # Safety
/// `s` must be a live handle; `lits` must point to `len` readable integers unless `len` is 0.
#[no_mangle]
pub unsafe extern "C" fn vivisat_add_clause(
    s: *mut VivisatSolver,
    lits: *const i32,
    len: usize,
) -> i32 {
    with_solver(s, |solver| {
        let raw: &[i32] = if len == 0 {
            &[]
        } else if lits.is_null() {
            return Err(Failure(
                VivisatStatus::NullPointer,
                "literal array is NULL".into(),
            ));
        } else {
            std::slice::from_raw_parts(lits, len)
        };
        if let Some(bad) = raw.iter().find(|&&x| x == 0 || x == i32::MIN) {
            return Err(invalid(format!("invalid literal {bad}")));
        }
        let clause: Vec<Lit> = raw.iter().map(|&x| Lit::from_dimacs(x)).collect();
        solver.formula.add_clause(&clause);
        solver.model = None;
        Ok(VivisatStatus::Ok as i32)
    })
}

/// Parse DIMACS CNF text and add its clauses.
///
/// # Safety
/// `s` must be a live handle; `text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn vivisat_parse_dimacs(s: *mut VivisatSolver, text: *const c_char) -> i32 {
    with_solver(s, |solver| {
        if text.is_null() {
            return Err(Failure(
                VivisatStatus::NullPointer,
                "DIMACS text is NULL".into(),
            ));
        }
        let parsed = parse_dimacs(CStr::from_ptr(text).to_bytes())
            .map_err(|e| Failure(VivisatStatus::ParseError, e.to_string()))?;
        for c in parsed.clauses() {
            solver.formula.add_clause(c);
        }
        if parsed.has_empty_clause() {
            solver.formula.add_clause(&[]);
        }
        // declared but unused variables still get a value in the model
        solver.formula.reserve_vars(parsed.num_vars());
        solver.model = None;
        Ok(VivisatStatus::Ok as i32)
    })
}

/// Solve all clauses added so far. Returns `VIVISAT_SAT`, `VIVISAT_UNSAT`, `VIVISAT_UNKNOWN`
/// (a limit was reached) or a negative status.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vivisat_solve(s: *mut VivisatSolver) -> i32 {
    with_solver(s, |solver| {
        let mut inner = Solver::from_formula(&solver.formula, solver.config.clone());
        let result = inner.solve();
        solver.report = Some(inner.metrics().report());
        let answer = result.answer();
        solver.model = match result {
            SolveResult::Sat(m) => Some(m),
            _ => None,
        };
        Ok(match answer {
            Answer::Sat => VIVISAT_SAT,
            Answer::Unsat => VIVISAT_UNSAT,
            Answer::Unknown => VIVISAT_UNKNOWN,
        })
    })
}

/// Number of variables seen so far.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vivisat_num_vars(s: *mut VivisatSolver) -> i32 {
    with_solver(s, |solver| {
        i32::try_from(solver.formula.num_vars()).map_err(|_| invalid("too many variables"))
    })
}

/// Value of variable `var` (1-based) in the model of the last satisfiable solve: 1 for true,
/// 0 for false, or a negative status.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vivisat_value(s: *mut VivisatSolver, var: i32) -> i32 {
    with_solver(s, |solver| {
        let model = solver.model.as_ref().ok_or_else(|| {
            Failure(
                VivisatStatus::NoModel,
                "no model: the last solve was not satisfiable".into(),
            )
        })?;
        let idx = usize::try_from(var)
            .ok()
            .filter(|&v| v >= 1 && v <= model.len())
            .ok_or_else(|| invalid(format!("variable {var} out of range 1..={}", model.len())))?;
        Ok(model[idx - 1] as i32)
    })
}

/// Metrics of the last solve as a JSON object, or `NULL` if nothing was solved yet. Release
/// the string with [`vivisat_string_free`].
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vivisat_stats_json(s: *mut VivisatSolver) -> *mut c_char {
    let mut json = None;
    let code = with_solver(s, |solver| {
        json = solver.report.as_ref().map(|r| r.to_json());
        Ok(VivisatStatus::Ok as i32)
    });
    match json {
        Some(j) if code == 0 => CString::new(j).map_or(ptr::null_mut(), CString::into_raw),
        _ => ptr::null_mut(),
    }
}

/// Release a string returned by this library. `NULL` is ignored.
///
/// # Safety
/// `p` must be `NULL` or a string from [`vivisat_stats_json`] that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn vivisat_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

/// Message of the most recent failed call on `s`, or `NULL` if the last call succeeded. The
/// string stays valid until the next call on `s`.
///
/// # Safety
/// `s` must be `NULL` or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vivisat_last_error(s: *const VivisatSolver) -> *const c_char {
    s.as_ref()
        .and_then(|solver| solver.last_error.as_ref())
        .map_or(ptr::null(), |e| e.as_ptr())
}
