//! The C interface exercised through its exported functions.
use std::ffi::{CStr, CString};
use std::ptr;

use vivisat_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn last_error(s: *mut VivisatSolver) -> String {
    let p = vivisat_last_error(s);
    assert!(!p.is_null(), "an error message was recorded");
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn add_clauses_and_read_the_model() {
    unsafe {
        let s = vivisat_new();
        assert_eq!(vivisat_add_clause(s, [1, 2].as_ptr(), 2), 0);
        assert_eq!(vivisat_add_clause(s, [-1].as_ptr(), 1), 0);
        assert_eq!(vivisat_solve(s), VIVISAT_SAT);
        assert!(vivisat_last_error(s).is_null());
        assert_eq!(vivisat_num_vars(s), 2);
        assert_eq!(vivisat_value(s, 1), 0);
        assert_eq!(vivisat_value(s, 2), 1);
        assert_eq!(vivisat_value(s, 3), VivisatStatus::InvalidArgument as i32);
        assert_eq!(vivisat_value(s, 0), VivisatStatus::InvalidArgument as i32);
        assert_eq!(vivisat_add_clause(s, [-2].as_ptr(), 1), 0);
        assert_eq!(vivisat_solve(s), VIVISAT_UNSAT);
        assert_eq!(vivisat_value(s, 1), VivisatStatus::NoModel as i32);
        vivisat_free(s);
    }
}

#[test]
fn dimacs_text_and_declared_variables() {
    unsafe {
        let s = vivisat_new();
        let text = cstr("c comment\np cnf 5 2\n1 -2 0\n2 0\n");
        assert_eq!(vivisat_parse_dimacs(s, text.as_ptr()), 0);
        assert_eq!(vivisat_num_vars(s), 5);
        assert_eq!(vivisat_solve(s), VIVISAT_SAT);
        assert_eq!(vivisat_value(s, 1), 1);
        assert_eq!(vivisat_value(s, 2), 1);
        assert!(vivisat_value(s, 5) >= 0);
        let bad = cstr("p cnf 2 1\n1 q 0\n");
        assert_eq!(
            vivisat_parse_dimacs(s, bad.as_ptr()),
            VivisatStatus::ParseError as i32
        );
        assert!(last_error(s).contains("invalid literal"));
        vivisat_free(s);
    }
}

#[test]
fn options_and_limits() {
    unsafe {
        let s = vivisat_new();
        for (name, value) in [
            ("viv-select", "maple"),
            ("viv-sort", "reverse"),
            ("seed", "9"),
        ] {
            assert_eq!(
                vivisat_set_option(s, cstr(name).as_ptr(), cstr(value).as_ptr()),
                0
            );
        }
        let code = vivisat_set_option(s, cstr("viv-select").as_ptr(), cstr("best").as_ptr());
        assert_eq!(code, VivisatStatus::InvalidArgument as i32);
        assert!(last_error(s).contains("best"));
        let code = vivisat_set_option(s, cstr("colour").as_ptr(), cstr("on").as_ptr());
        assert_eq!(code, VivisatStatus::InvalidArgument as i32);
        assert_eq!(
            vivisat_set_option(s, ptr::null(), cstr("on").as_ptr()),
            VivisatStatus::NullPointer as i32
        );

        // pigeonhole 9 -> 8 needs far more than ten conflicts
        let (holes, pigeons) = (8, 9);
        let var = |p: i32, h: i32| p * holes + h + 1;
        for p in 0..pigeons {
            let c: Vec<i32> = (0..holes).map(|h| var(p, h)).collect();
            vivisat_add_clause(s, c.as_ptr(), c.len());
        }
        for h in 0..holes {
            for p in 0..pigeons {
                for q in p + 1..pigeons {
                    vivisat_add_clause(s, [-var(p, h), -var(q, h)].as_ptr(), 2);
                }
            }
        }
        assert_eq!(vivisat_set_conflict_limit(s, 10), 0);
        assert_eq!(vivisat_solve(s), VIVISAT_UNKNOWN);
        assert_eq!(
            vivisat_set_time_limit(s, f64::NAN),
            VivisatStatus::InvalidArgument as i32
        );
        vivisat_free(s);
    }
}

#[test]
fn stats_json_round_trip() {
    unsafe {
        let s = vivisat_new();
        assert!(vivisat_stats_json(s).is_null());
        vivisat_add_clause(s, [1, 2, 3].as_ptr(), 3);
        vivisat_solve(s);
        let p = vivisat_stats_json(s);
        assert!(!p.is_null());
        let json = CStr::from_ptr(p).to_str().unwrap().to_string();
        vivisat_string_free(p);
        let compact: String = json.split_whitespace().collect();
        assert!(compact.contains("\"schema_version\":1"));
        vivisat_free(s);
    }
}

#[test]
fn invalid_arguments_are_rejected() {
    unsafe {
        assert_eq!(
            vivisat_solve(ptr::null_mut()),
            VivisatStatus::NullPointer as i32
        );
        assert!(vivisat_last_error(ptr::null()).is_null());
        vivisat_free(ptr::null_mut());
        vivisat_string_free(ptr::null_mut());
        let s = vivisat_new();
        assert_eq!(
            vivisat_add_clause(s, [1, 0].as_ptr(), 2),
            VivisatStatus::InvalidArgument as i32
        );
        assert_eq!(
            vivisat_add_clause(s, ptr::null(), 3),
            VivisatStatus::NullPointer as i32
        );
        // the empty clause makes the formula unsatisfiable
        assert_eq!(vivisat_add_clause(s, ptr::null(), 0), 0);
        assert_eq!(vivisat_solve(s), VIVISAT_UNSAT);
        vivisat_free(s);
    }
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(vivisat_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_function() {
    let header = include_str!("../include/vivisat.h");
    for f in [
        "vivisat_new",
        "vivisat_free",
        "vivisat_version",
        "vivisat_set_option",
        "vivisat_set_conflict_limit",
        "vivisat_set_time_limit",
        "vivisat_add_clause",
        "vivisat_parse_dimacs",
        "vivisat_solve",
        "vivisat_num_vars",
        "vivisat_value",
        "vivisat_stats_json",
        "vivisat_string_free",
        "vivisat_last_error",
    ] {
        assert!(
            header.contains(&format!(" {f}(")) || header.contains(&format!("*{f}(")),
            "{f}"
        );
    }
    assert!(header.contains("typedef struct VivisatSolver VivisatSolver;"));
}
