//! Clause vivification: shortening clauses by propagating the negations of their literals.
//!
//! This module holds the policy side: when a pass runs ([`live_restart`]), which clauses it
//! visits ([`live_clause`]) and in which order their literals are tried ([`sort_clause`]).
//! The propagation work itself is done by the solver in [`engine`].
mod engine;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::formula::{ClauseHeader, Lit, Tier};
use crate::search::{Trail, VarOrder};

pub use engine::{VivifyOutcome, VivifyStatus};

/// When a vivification pass is started at a restart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Activation {
    /// After every restart in which the learnt clause database was reduced.
    FollowReduction,
    /// Once `alpha + beta * passes` clauses were learnt since the previous pass.
    Threshold {
        alpha: u64,
        beta: u64,
    },
    EveryRestart,
    /// Once more than `n` clauses were learnt since the previous pass.
    FixedGap(u64),
}

/// Which clauses a pass vivifies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Selection {
    /// Never-vivified learnt clauses in the better half by LBD.
    GlucoseHalf,
    /// Never-vivified learnt clauses in the best `fraction` by LBD.
    GlucoseFraction(f64),
    /// Never-vivified learnt clauses in CORE or TIER2.
    MapleTiers,
    /// Learnt CORE/TIER2 clauses not vivified yet or whose LBD dropped twice since.
    LivePlus,
    /// [`Selection::LivePlus`] extended to original clauses used in useful conflicts, with
    /// re-vivification when the LBD dropped three times or to 1.
    LivePlusPlus,
}

/// Order in which the literals of a clause are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SortOrder {
    Current,
    Low2HighLevel,
    High2LowLevel,
    Low2HighActivity,
    High2LowActivity,
    Random,
    Reverse,
}

impl SortOrder {
    pub const ALL: [SortOrder; 7] = [
        SortOrder::Current,
        SortOrder::Low2HighLevel,
        SortOrder::High2LowLevel,
        SortOrder::Low2HighActivity,
        SortOrder::High2LowActivity,
        SortOrder::Random,
        SortOrder::Reverse,
    ];
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VivifyConfig {
    /// Vivify during search (and before it, if `preprocess` is set).
    pub enabled: bool,
    pub activation: Activation,
    pub selection: Selection,
    pub sort_order: SortOrder,
    /// Largest LBD of a learnt clause whose conflict counts as useful.
    pub useful_lbd_max: u32,
    /// Vivify every original clause once before search.
    pub preprocess: bool,
    /// Propagated-literal budget of the preprocessing pass.
    pub preprocess_cap: u64,
}

impl Default for VivifyConfig {
    fn default() -> Self {
        VivifyConfig {
            enabled: true,
            activation: Activation::Threshold {
                alpha: 1000,
                beta: 2000,
            },
            selection: Selection::LivePlusPlus,
            sort_order: SortOrder::Current,
            useful_lbd_max: 20,
            preprocess: true,
            preprocess_cap: 100_000_000,
        }
    }
}

impl VivifyConfig {
    /// Panics on out-of-range parameters.
    pub fn validate(&self) {
        if let Selection::GlucoseFraction(d) = self.selection {
            assert!(
                d > 0.0 && d <= 1.0,
                "vivification fraction must be in (0, 1], got {d}"
            );
        }
        assert!(
            self.useful_lbd_max >= 1,
            "useful LBD bound must be at least 1"
        );
    }
}

/// Counters driving the activation gate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VivifyState {
    /// Clauses learnt since the last pass.
    pub new_learnts: u64,
    /// Passes performed so far.
    pub passes: u64,
}

/// Should a vivification pass run at this restart?
pub fn live_restart(state: &VivifyState, activation: Activation, reduction_fired: bool) -> bool {
    match activation {
        Activation::FollowReduction => reduction_fired,
        Activation::Threshold { alpha, beta } => state.new_learnts >= alpha + beta * state.passes,
        Activation::EveryRestart => true,
        Activation::FixedGap(n) => state.new_learnts > n,
    }
}

/// The LBD is 1 now but was larger when the clause was last vivified.
pub fn lbd_dropped_to_one(h: &ClauseHeader) -> bool {
    h.vivified_once && h.lbd == 1 && h.lbd_at_vivify > 1
}

/// Should this clause be vivified in the current pass?
///
/// `in_fraction` tells whether a learnt clause lies in the selected LBD fraction; it only
/// matters for the Glucose-style policies.
pub fn live_clause(h: &ClauseHeader, selection: Selection, in_fraction: bool) -> bool {
    let good_tier = matches!(h.tier, Tier::Core | Tier::Tier2);
    let lambda = h.lbd_decreases_since_vivify;
    match selection {
        Selection::GlucoseHalf | Selection::GlucoseFraction(_) => {
            h.learnt && !h.vivified_once && in_fraction
        }
        Selection::MapleTiers => h.learnt && !h.vivified_once && good_tier,
        Selection::LivePlus => h.learnt && good_tier && (!h.vivified_once || lambda >= 2),
        Selection::LivePlusPlus => {
            if h.learnt {
                good_tier && (!h.vivified_once || lambda >= 2 || lbd_dropped_to_one(h))
            } else {
                h.used_in_useful_conflict
                    && (!h.vivified_once || lambda >= 3 || lbd_dropped_to_one(h))
            }
        }
    }
}

/// Permute `lits` for vivification.
///
/// Level orders use the level of each variable's most recent assignment; variables never
/// assigned count as the highest level. Sorting is stable.
pub fn sort_clause<R: Rng>(
    lits: &[Lit],
    order: SortOrder,
    trail: &Trail,
    activity: &VarOrder,
    rng: &mut R,
) -> Vec<Lit> {
    let mut out = lits.to_vec();
    match order {
        SortOrder::Current => {}
        SortOrder::Reverse => out.reverse(),
        SortOrder::Low2HighLevel => out.sort_by_key(|l| trail.level(l.var())),
        SortOrder::High2LowLevel => out.sort_by_key(|l| std::cmp::Reverse(trail.level(l.var()))),
        SortOrder::Low2HighActivity => out.sort_by(|a, b| {
            activity
                .activity(a.var())
                .total_cmp(&activity.activity(b.var()))
        }),
        SortOrder::High2LowActivity => out.sort_by(|a, b| {
            activity
                .activity(b.var())
                .total_cmp(&activity.activity(a.var()))
        }),
        SortOrder::Random => out.shuffle(rng),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Var;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn learnt(tier: Tier) -> ClauseHeader {
        ClauseHeader::learnt(3, tier, 0)
    }

    #[test]
    fn threshold_gate() {
        let act = Activation::Threshold {
            alpha: 1000,
            beta: 2000,
        };
        let s = |n, p| VivifyState {
            new_learnts: n,
            passes: p,
        };
        assert!(!live_restart(&s(999, 0), act, false));
        assert!(live_restart(&s(1000, 0), act, false));
        assert!(!live_restart(&s(2999, 1), act, false));
        assert!(live_restart(&s(3000, 1), act, false));
        assert!(!live_restart(&s(4999, 2), act, false));
        assert!(live_restart(&s(5000, 2), act, false));
    }

    #[test]
    fn other_gates() {
        let s = VivifyState {
            new_learnts: 500,
            passes: 3,
        };
        assert!(!live_restart(&s, Activation::FollowReduction, false));
        assert!(live_restart(&s, Activation::FollowReduction, true));
        assert!(live_restart(
            &VivifyState::default(),
            Activation::EveryRestart,
            false
        ));
        assert!(!live_restart(&s, Activation::FixedGap(500), false));
        assert!(live_restart(&s, Activation::FixedGap(499), false));
    }

    #[test]
    fn live_plus_lambda() {
        let mut h = learnt(Tier::Core);
        assert!(live_clause(&h, Selection::LivePlus, false));
        h.vivified_once = true;
        h.lbd_decreases_since_vivify = 1;
        assert!(!live_clause(&h, Selection::LivePlus, false));
        h.lbd_decreases_since_vivify = 2;
        assert!(live_clause(&h, Selection::LivePlus, false));
        let local = learnt(Tier::Local);
        assert!(!live_clause(&local, Selection::LivePlus, false));
    }

    #[test]
    fn live_plus_plus_originals() {
        let mut h = ClauseHeader::original(5);
        assert!(!live_clause(&h, Selection::LivePlusPlus, false));
        h.used_in_useful_conflict = true;
        assert!(live_clause(&h, Selection::LivePlusPlus, false));
        h.vivified_once = true;
        h.lbd_at_vivify = 4;
        h.lbd = 4;
        h.lbd_decreases_since_vivify = 2;
        assert!(!live_clause(&h, Selection::LivePlusPlus, false));
        h.lbd_decreases_since_vivify = 3;
        assert!(live_clause(&h, Selection::LivePlusPlus, false));
        h.lbd_decreases_since_vivify = 1;
        h.lbd = 1;
        assert!(live_clause(&h, Selection::LivePlusPlus, false));
    }

    #[test]
    fn glucose_and_maple_never_revisit() {
        let mut h = learnt(Tier::Tier2);
        assert!(live_clause(&h, Selection::MapleTiers, false));
        assert!(live_clause(&h, Selection::GlucoseHalf, true));
        assert!(!live_clause(&h, Selection::GlucoseHalf, false));
        h.vivified_once = true;
        h.lbd_decreases_since_vivify = 10;
        assert!(!live_clause(&h, Selection::MapleTiers, false));
        assert!(!live_clause(&h, Selection::GlucoseFraction(0.3), true));
        assert!(!live_clause(
            &ClauseHeader::original(3),
            Selection::MapleTiers,
            true
        ));
    }

    #[test]
    fn sort_orders() {
        let lits: Vec<Lit> = [1, -2, 3].iter().map(|&x| Lit::from_dimacs(x)).collect();
        let mut trail = Trail::new(3);
        let mut order = VarOrder::new(3, 0.95, true);
        order.set_activity(Var::new(0), 2.0);
        order.set_activity(Var::new(1), 3.0);
        order.set_activity(Var::new(2), 1.0);
        // x3 at level 1, x1 at level 2, x2 never assigned
        trail.new_level();
        trail.assign(Lit::from_dimacs(3), None);
        trail.new_level();
        trail.assign(Lit::from_dimacs(1), None);
        trail.backtrack(0, |_| {});
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let run = |o, rng: &mut ChaCha8Rng| -> Vec<i32> {
            sort_clause(&lits, o, &trail, &order, rng)
                .iter()
                .map(|l| l.to_dimacs())
                .collect()
        };
        assert_eq!(run(SortOrder::Current, &mut rng), vec![1, -2, 3]);
        assert_eq!(run(SortOrder::Reverse, &mut rng), vec![3, -2, 1]);
        assert_eq!(run(SortOrder::Low2HighLevel, &mut rng), vec![3, 1, -2]);
        assert_eq!(run(SortOrder::High2LowLevel, &mut rng), vec![-2, 1, 3]);
        assert_eq!(run(SortOrder::Low2HighActivity, &mut rng), vec![3, 1, -2]);
        assert_eq!(run(SortOrder::High2LowActivity, &mut rng), vec![-2, 1, 3]);
    }

    #[test]
    fn random_order_is_seeded_permutation() {
        let trail = Trail::new(40);
        let order = VarOrder::new(40, 0.95, true);
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        let mut gen = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10_000 {
            let len = gen.gen_range(1..12);
            let mut vars: Vec<u32> = (0..40).collect();
            vars.shuffle(&mut gen);
            let lits: Vec<Lit> = vars[..len]
                .iter()
                .map(|&v| Var::new(v).lit(gen.gen_bool(0.5)))
                .collect();
            let x = sort_clause(&lits, SortOrder::Random, &trail, &order, &mut a);
            let y = sort_clause(&lits, SortOrder::Random, &trail, &order, &mut b);
            assert_eq!(x, y);
            let (mut s1, mut s2) = (lits.clone(), x);
            s1.sort();
            s2.sort();
            assert_eq!(s1, s2);
        }
    }
}
