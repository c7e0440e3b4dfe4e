//! Property tests over small random formulas.
mod common;

use common::{all_models, implied_by, is_sub_multiset, Cnf};
use proptest::prelude::*;
use vivisat::formula::{emit_dimacs, parse_dimacs};
use vivisat::metrics::RuleSet;
use vivisat::vivify::{Activation, SortOrder};
use vivisat::{SolveResult, Solver, SolverConfig};

const N: u32 = 8;

fn cnf_strategy() -> impl Strategy<Value = Cnf> {
    let lit = (1..=N as i32, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
    prop::collection::vec(prop::collection::vec(lit, 1..=4), 1..40)
}

fn sort_strategy() -> impl Strategy<Value = SortOrder> {
    prop::sample::select(SortOrder::ALL.to_vec())
}

proptest! {
    #[test]
    fn answer_matches_truth_table(cnf in cnf_strategy(), seed in 0u64..4) {
        let models = all_models(N, &cnf);
        let cfg = SolverConfig { seed, check_invariants: true, ..SolverConfig::default() };
        let mut s = Solver::from_formula(&common::formula(N, &cnf), cfg);
        match s.solve() {
            SolveResult::Sat(m) => prop_assert!(common::satisfies(&m, &cnf)),
            SolveResult::Unsat => prop_assert!(models.is_empty()),
            SolveResult::Unknown => prop_assert!(false, "no budget was set"),
        }
    }

    #[test]
    fn vivified_clauses_are_implied_sub_multisets(
        cnf in cnf_strategy(),
        order in sort_strategy(),
        seed in 0u64..4,
    ) {
        let models = all_models(N, &cnf);
        let mut cfg = SolverConfig { seed, record_replacements: true, check_invariants: true,
            ..SolverConfig::default() };
        cfg.vivify.sort_order = order;
        cfg.vivify.activation = Activation::EveryRestart;
        cfg.restart.mode = vivisat::restart::RestartMode::Luby;
        cfg.restart.luby_unit = 2;
        let mut s = Solver::from_formula(&common::formula(N, &cnf), cfg);
        s.solve();
        for r in s.replacements() {
            prop_assert!(implied_by(&models, &r.after));
            prop_assert!(is_sub_multiset(&r.after, &r.before));
            prop_assert!(!(r.rules.rule2 && r.rules.rule3));
            prop_assert_eq!(r.rules == RuleSet::default(), r.after.len() == r.before.len());
        }
        prop_assert!(s.metrics().partition_holds());
    }

    #[test]
    fn dimacs_round_trip(cnf in cnf_strategy()) {
        let f = common::formula(N, &cnf);
        let text = emit_dimacs(&f);
        let g = parse_dimacs(&text).unwrap();
        prop_assert_eq!(f.clauses(), g.clauses());
        prop_assert_eq!(f.num_vars(), g.num_vars());
    }
}
