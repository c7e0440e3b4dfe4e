//! Learnt clause database: LBD maintenance, quality tiers and the two reduction schemes.
//!
//! Glucose-style reduction sorts all learnt clauses by LBD and deletes the worse half.
//! Tiered reduction keeps CORE clauses forever, demotes TIER2 clauses that stopped taking part in
//! conflicts, and deletes the less active half of LOCAL.
use serde::{Deserialize, Serialize};

use crate::formula::{CRef, Lit, Tier};
use crate::search::{Solver, Trail};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TierConfig {
    /// Learnt clauses with LBD at most `t1` are CORE.
    pub t1: u32,
    /// Learnt clauses with LBD at most `t2` (and above `t1`) are TIER2.
    pub t2: u32,
    /// Conflicts without use after which a TIER2 clause moves to LOCAL.
    pub tier2_staleness: u64,
}

impl Default for TierConfig {
    fn default() -> Self {
        TierConfig {
            t1: 3,
            t2: 6,
            tier2_staleness: 30_000,
        }
    }
}

impl TierConfig {
    pub fn tier_for(&self, lbd: u32) -> Tier {
        if lbd <= self.t1 {
            Tier::Core
        } else if lbd <= self.t2 {
            Tier::Tier2
        } else {
            Tier::Local
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReduceMode {
    Glucose,
    Tiered,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReduceConfig {
    pub mode: ReduceMode,
    /// Conflicts before the first Glucose-style reduction.
    pub first: u64,
    /// Growth of the Glucose-style interval per reduction.
    pub inc: u64,
    /// Conflicts between two LOCAL reductions in tiered mode.
    pub local_interval: u64,
    /// Conflicts between two TIER2 staleness sweeps in tiered mode.
    pub tier2_sweep_interval: u64,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig {
            mode: ReduceMode::Tiered,
            first: 2000,
            inc: 300,
            local_interval: 15_000,
            tier2_sweep_interval: 10_000,
        }
    }
}

/// Glucose reduction trigger: `conflicts_since_last >= first + 2 * inc * reductions_done`.
pub fn should_reduce(conflicts_since_last: u64, cfg: &ReduceConfig, reductions_done: u64) -> bool {
    conflicts_since_last >= cfg.first + 2 * cfg.inc * reductions_done
}

/// Number of distinct decision levels among `lits`. Every literal must be assigned.
pub fn compute_lbd(lits: &[Lit], trail: &Trail) -> u32 {
    let mut levels: Vec<u32> = lits
        .iter()
        .map(|&l| {
            assert!(
                !trail.value(l).is_undef(),
                "LBD of a clause with unassigned literal {l}"
            );
            trail.level(l.var())
        })
        .collect();
    levels.sort_unstable();
    levels.dedup();
    levels.len() as u32
}

/// Reusable level-stamp buffer for LBD computation without allocation.
#[derive(Debug, Default, Clone)]
pub(crate) struct LbdCounter {
    stamps: Vec<u64>,
    epoch: u64,
}

impl LbdCounter {
    pub(crate) fn count(&mut self, lits: &[Lit], trail: &Trail) -> u32 {
        self.epoch += 1;
        let mut n = 0;
        for &l in lits {
            debug_assert!(!trail.value(l).is_undef());
            let lvl = trail.level(l.var()) as usize;
            if lvl >= self.stamps.len() {
                self.stamps.resize(lvl + 1, 0);
            }
            if self.stamps[lvl] != self.epoch {
                self.stamps[lvl] = self.epoch;
                n += 1;
            }
        }
        n
    }
}

/// Scheduling state of the reduction policies.
#[derive(Debug, Default, Clone)]
pub(crate) struct DbState {
    pub(crate) reductions: u64,
    pub(crate) conflicts_at_last_reduce: u64,
    pub(crate) next_local_reduce: u64,
    pub(crate) next_tier2_sweep: u64,
    pub(crate) reduction_fired_since_restart: bool,
}

const CLAUSE_RESCALE_LIMIT: f64 = 1e20;

impl Solver {
    /// Update a clause that took part in deriving a learnt clause of LBD `learnt_lbd`.
    /// Every literal of the clause must be assigned.
    pub fn on_clause_used(&mut self, cref: CRef, learnt_lbd: u32) {
        let new_lbd = self.lbd_counter.count(self.arena[cref].lits(), &self.trail);
        let conflicts = self.metrics.conflicts;
        let gamma = self.config.vivify.useful_lbd_max;
        let tiers = self.config.tiers.clone();
        let h = &mut self.arena[cref].header;
        let kind = h.kind();
        if !h.lbd_ever_recomputed {
            h.lbd_ever_recomputed = true;
            self.metrics.kind_mut(kind).lbd_recomputed += 1;
        }
        if new_lbd < h.lbd {
            h.lbd = new_lbd;
            h.lbd_decreases_since_vivify += 1;
            if !h.lbd_ever_decreased {
                h.lbd_ever_decreased = true;
                self.metrics.kind_mut(kind).lbd_decreased += 1;
            }
            if h.learnt {
                let promoted = tiers.tier_for(new_lbd);
                if tier_rank(promoted) < tier_rank(h.tier) {
                    h.tier = promoted;
                }
            }
        }
        if learnt_lbd <= gamma {
            h.used_in_useful_conflict = true;
        }
        h.last_touch = conflicts;
        if h.learnt {
            self.bump_clause(cref);
        }
    }

    /// Move a learnt clause up to the tier its current LBD qualifies for.
    pub(crate) fn promote_tier(&mut self, cref: CRef) {
        let h = &mut self.arena[cref].header;
        if h.learnt {
            let t = self.config.tiers.tier_for(h.lbd);
            if tier_rank(t) < tier_rank(h.tier) {
                h.tier = t;
            }
        }
    }

    pub(crate) fn bump_clause(&mut self, cref: CRef) {
        let h = &mut self.arena[cref].header;
        h.activity += self.cla_inc;
        if h.activity > CLAUSE_RESCALE_LIMIT {
            for &c in &self.learnts {
                if !self.arena.is_deleted(c) {
                    self.arena[c].header.activity *= 1.0 / CLAUSE_RESCALE_LIMIT;
                }
            }
            self.cla_inc *= 1.0 / CLAUSE_RESCALE_LIMIT;
        }
    }

    pub(crate) fn decay_clause_activity(&mut self) {
        self.cla_inc /= self.config.clause_decay;
    }

    /// Is the clause the reason of its first literal on the current trail?
    pub(crate) fn is_locked(&self, cref: CRef) -> bool {
        let first = self.arena[cref].lits()[0];
        self.trail.is_true(first) && self.trail.reason(first.var()) == Some(cref)
    }

    /// Should a reduction run now under the configured scheme?
    pub(crate) fn reduce_due(&self) -> bool {
        let conflicts = self.metrics.conflicts;
        match self.config.reduce.mode {
            ReduceMode::Glucose => should_reduce(
                conflicts - self.db.conflicts_at_last_reduce,
                &self.config.reduce,
                self.db.reductions,
            ),
            ReduceMode::Tiered => {
                conflicts >= self.db.next_local_reduce || conflicts >= self.db.next_tier2_sweep
            }
        }
    }

    /// Run whichever reduction is due. Returns the number of deleted clauses.
    pub(crate) fn reduce(&mut self) -> usize {
        let conflicts = self.metrics.conflicts;
        match self.config.reduce.mode {
            ReduceMode::Glucose => self.reduce_glucose(),
            ReduceMode::Tiered => {
                if conflicts >= self.db.next_tier2_sweep {
                    self.demote_stale_tier2();
                    self.db.next_tier2_sweep = conflicts + self.config.reduce.tier2_sweep_interval;
                }
                if conflicts >= self.db.next_local_reduce {
                    self.db.next_local_reduce = conflicts + self.config.reduce.local_interval;
                    self.reduce_tiered()
                } else {
                    0
                }
            }
        }
    }

    /// Delete the worse half of the learnt clauses by LBD, keeping binaries, LBD-2 clauses and
    /// reasons.
    pub fn reduce_glucose(&mut self) -> usize {
        let mut cands: Vec<CRef> = self
            .learnts
            .iter()
            .copied()
            .filter(|&c| !self.arena.is_deleted(c))
            .collect();
        cands.sort_by(|&a, &b| {
            let (ha, hb) = (&self.arena[a].header, &self.arena[b].header);
            hb.lbd
                .cmp(&ha.lbd)
                .then(ha.activity.total_cmp(&hb.activity))
                .then(a.cmp(&b))
        });
        let limit = cands.len() / 2;
        let mut deleted = 0;
        for &c in &cands[..limit] {
            let cl = &self.arena[c];
            if cl.len() > 2 && cl.header.lbd > 2 && !self.is_locked(c) {
                self.remove_clause(c);
                deleted += 1;
            }
        }
        self.db.reductions += 1;
        self.db.conflicts_at_last_reduce = self.metrics.conflicts;
        self.finish_reduction(deleted);
        deleted
    }

    /// Move TIER2 clauses unused for longer than the staleness window to LOCAL.
    pub fn demote_stale_tier2(&mut self) -> usize {
        let now = self.metrics.conflicts;
        let staleness = self.config.tiers.tier2_staleness;
        let mut demoted = 0;
        for &c in &self.learnts {
            if self.arena.is_deleted(c) {
                continue;
            }
            let h = &mut self.arena[c].header;
            if h.tier == Tier::Tier2 && now.saturating_sub(h.last_touch) > staleness {
                h.tier = Tier::Local;
                demoted += 1;
            }
        }
        demoted
    }

    /// Delete the less active half of LOCAL, keeping reasons.
    pub fn reduce_tiered(&mut self) -> usize {
        let mut locals: Vec<CRef> = self
            .learnts
            .iter()
            .copied()
            .filter(|&c| !self.arena.is_deleted(c) && self.arena[c].header.tier == Tier::Local)
            .collect();
        locals.sort_by(|&a, &b| {
            self.arena[a]
                .header
                .activity
                .total_cmp(&self.arena[b].header.activity)
                .then(a.cmp(&b))
        });
        let limit = locals.len() / 2;
        let mut deleted = 0;
        for &c in &locals[..limit] {
            if !self.is_locked(c) {
                self.remove_clause(c);
                deleted += 1;
            }
        }
        self.db.reductions += 1;
        self.finish_reduction(deleted);
        deleted
    }

    fn finish_reduction(&mut self, deleted: usize) {
        self.metrics.reductions += 1;
        self.db.reduction_fired_since_restart = true;
        if deleted > 0 {
            self.collect_garbage();
        }
    }
}

fn tier_rank(t: Tier) -> u8 {
    match t {
        Tier::Core => 0,
        Tier::Tier2 => 1,
        Tier::Local => 2,
        Tier::Original => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Var;

    #[test]
    fn lbd_counts_distinct_levels() {
        let mut t = Trail::new(4);
        let levels = [3u32, 3, 5, 7];
        let mut lits = vec![];
        let mut v = 0;
        for lvl in 0..=7u32 {
            if lvl > 0 {
                t.new_level();
            }
            for (i, &want) in levels.iter().enumerate() {
                if want == lvl {
                    let l = Var::new(i as u32).negative();
                    t.assign(l, None);
                    lits.push(!l);
                    v += 1;
                }
            }
        }
        assert_eq!(v, 4);
        assert_eq!(compute_lbd(&lits, &t), 3);
        assert_eq!(compute_lbd(&lits[..2], &t), 1);
        assert_eq!(LbdCounter::default().count(&lits, &t), 3);
    }

    #[test]
    #[should_panic(expected = "unassigned")]
    fn lbd_of_unassigned_literal_panics() {
        let t = Trail::new(1);
        compute_lbd(&[Var::new(0).positive()], &t);
    }

    #[test]
    fn reduce_threshold_arithmetic() {
        let cfg = ReduceConfig::default();
        assert!(!should_reduce(1999, &cfg, 0));
        assert!(should_reduce(2000, &cfg, 0));
        assert!(!should_reduce(2599, &cfg, 1));
        assert!(should_reduce(2600, &cfg, 1));
        assert!(!should_reduce(3199, &cfg, 2));
        assert!(should_reduce(3200, &cfg, 2));
    }

    #[test]
    fn tiers_by_lbd() {
        let cfg = TierConfig::default();
        assert_eq!(cfg.tier_for(1), Tier::Core);
        assert_eq!(cfg.tier_for(3), Tier::Core);
        assert_eq!(cfg.tier_for(4), Tier::Tier2);
        assert_eq!(cfg.tier_for(6), Tier::Tier2);
        assert_eq!(cfg.tier_for(7), Tier::Local);
    }

    use crate::formula::Formula;
    use crate::search::SolverConfig;

    fn lits(xs: &[i32]) -> Vec<Lit> {
        xs.iter().map(|&x| Lit::from_dimacs(x)).collect()
    }

    fn solver(num_vars: usize) -> Solver {
        let f = Formula::new(num_vars);
        Solver::from_formula(&f, SolverConfig::default())
    }

    /// Assert the negation of each group of literals on its own new level.
    fn falsify_by_levels(s: &mut Solver, groups: &[&[i32]]) {
        for g in groups {
            s.trail.new_level();
            for &x in *g {
                s.trail.assign(!Lit::from_dimacs(x), None);
            }
        }
    }

    #[test]
    fn lbd_decrease_counts_lambda() {
        let mut s = solver(8);
        let c = s.add_learnt(&lits(&[1, 2, 3, 4, 5, 6, 7]), 7);
        falsify_by_levels(&mut s, &[&[1, 2], &[3], &[4, 5], &[6], &[7]]);
        s.on_clause_used(c, 10);
        let h = &s.arena[c].header;
        assert_eq!(h.lbd, 5);
        assert_eq!(h.lbd_decreases_since_vivify, 1);
        assert_eq!(h.tier, Tier::Tier2);
        assert!(h.used_in_useful_conflict);
        s.on_clause_used(c, 10);
        assert_eq!(s.arena[c].header.lbd_decreases_since_vivify, 1);
    }

    #[test]
    fn useful_conflict_boundary() {
        let mut s = solver(3);
        let c = s.add_learnt(&lits(&[1, 2, 3]), 3);
        falsify_by_levels(&mut s, &[&[1, 2, 3]]);
        s.on_clause_used(c, 21);
        assert!(!s.arena[c].header.used_in_useful_conflict);
        s.on_clause_used(c, 20);
        assert!(s.arena[c].header.used_in_useful_conflict);
    }

    #[test]
    fn glucose_reduction_deletes_worst_half() {
        let mut s = solver(12);
        let l8 = s.add_learnt(&lits(&[1, 2, 3, 4, 5, 6, 7, 8]), 8);
        let l6 = s.add_learnt(&lits(&[9, 2, 3, 4, 5, 6]), 6);
        let l3 = s.add_learnt(&lits(&[10, 2, 3]), 3);
        let l2 = s.add_learnt(&lits(&[11, 2, 3]), 2);
        assert_eq!(s.reduce_glucose(), 2);
        assert_eq!(s.learnts(), vec![l3, l2]);
        assert!(s.arena.is_deleted(l8) && s.arena.is_deleted(l6));
        s.check_integrity().unwrap();
        assert_eq!(s.db.reductions, 1);
    }

    #[test]
    fn glucose_reduction_keeps_reasons() {
        let mut s = solver(12);
        s.add_learnt(&lits(&[1, 2, 3, 4, 5, 6, 7, 8]), 8);
        s.add_learnt(&lits(&[9, 2, 3, 4, 5, 6]), 6);
        s.add_learnt(&lits(&[10, 2, 3]), 3);
        s.add_learnt(&lits(&[11, 2, 3]), 3);
        for x in 2..=8 {
            s.push_decision(Lit::from_dimacs(-x));
            assert!(s.propagate().is_none());
        }
        for x in [1, 9, 10, 11] {
            assert!(s.trail.is_true(Lit::from_dimacs(x)));
        }
        assert_eq!(s.reduce_glucose(), 0);
        assert_eq!(s.learnts().len(), 4);
        s.check_integrity().unwrap();
    }

    #[test]
    fn tiered_reduction_demotes_stale_and_keeps_core() {
        let mut s = solver(20);
        let core = s.add_learnt(&lits(&[1, 2, 3]), 2);
        let t2 = s.add_learnt(&lits(&[4, 5, 6, 7, 8]), 5);
        let locals: Vec<CRef> = (0..4)
            .map(|i| {
                let c = s.add_learnt(&lits(&[9 + i, 13, 14, 15, 16, 17, 18, 19]), 8);
                s.arena[c].header.activity = i as f64;
                c
            })
            .collect();
        s.metrics.conflicts = 30_001;
        assert_eq!(s.demote_stale_tier2(), 1);
        assert_eq!(s.arena[t2].header.tier, Tier::Local);
        s.arena[t2].header.activity = 10.0;
        // LOCAL: activities 0,1,2,3 and 10; the two least active go
        assert_eq!(s.reduce_tiered(), 2);
        assert!(s.arena.is_deleted(locals[0]) && s.arena.is_deleted(locals[1]));
        assert!(!s.arena.is_deleted(core));
        assert!(!s.arena.is_deleted(t2));
        s.check_integrity().unwrap();
        for _ in 0..5 {
            s.reduce_tiered();
        }
        assert!(!s.arena.is_deleted(core));
    }

    #[test]
    fn fresh_tier2_is_not_demoted() {
        let mut s = solver(6);
        let t2 = s.add_learnt(&lits(&[1, 2, 3, 4, 5]), 5);
        s.metrics.conflicts = 30_000;
        assert_eq!(s.demote_stale_tier2(), 0);
        assert_eq!(s.arena[t2].header.tier, Tier::Tier2);
    }
}
