//! Conflict analysis on a fixed implication graph with four decision levels.
mod common;

use common::fig1::{self, lit};
use vivisat::{Solver, SolverConfig};

fn setup() -> (Solver, vivisat::formula::CRef) {
    let f = common::formula(fig1::NUM_VARS, &fig1::clauses());
    let mut s = Solver::from_formula(&f, SolverConfig::default());
    let mut conflict = None;
    for a in fig1::DECISIONS {
        s.push_decision(lit(a));
        conflict = s.propagate();
        if conflict.is_some() {
            break;
        }
    }
    (s, conflict.expect("the last decision leads to a conflict"))
}

#[test]
fn conflict_comes_from_the_last_clause() {
    let (s, confl) = setup();
    assert_eq!(s.trail().decision_level(), 4);
    let mut got: Vec<_> = s.clause(confl).lits().to_vec();
    got.sort();
    let mut want = vec![!lit(140), !lit(62)];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn first_uip_clause_in_distance_order() {
    let (mut s, confl) = setup();
    let a = s.analyze(confl);
    let want: Vec<_> = [45, 8, 5, 16, 11].iter().map(|&x| !lit(x)).collect();
    assert_eq!(a.first_uip_clause, want);
}

#[test]
fn recursive_minimization_removes_l11() {
    let (mut s, confl) = setup();
    let a = s.analyze(confl);
    let want: Vec<_> = [45, 8, 5, 16].iter().map(|&x| !lit(x)).collect();
    assert_eq!(a.learnt, want);
    assert_eq!(a.backtrack_level, 2);
    assert_eq!(a.lbd, 3);
}

#[test]
fn vivification_analysis_skips_l20() {
    let (mut s, confl) = setup();
    let d: Vec<_> = fig1::DECISIONS.iter().map(|&x| lit(x)).collect();
    let r = s.clause(confl).lits().to_vec();
    let got = s.confl_analysis(&d, &r);
    let want: Vec<_> = [1, 8, 30].iter().map(|&x| !lit(x)).collect();
    assert_eq!(got, want);
}
