//! Vivification passes run by the solver at level 0.
//!
//! A clause `l1 ∨ ... ∨ lk` is removed from the watch lists and its literals are visited in the
//! chosen order. A literal that is already false is dropped. A literal that is already true, or a
//! conflict after asserting the negation of a literal, ends the visit; the implication graph then
//! tells which of the asserted negations were actually needed. Otherwise the negation is asserted
//! on a new level, the literal is kept, and propagation continues.
use super::{live_clause, live_restart, sort_clause, Selection, SortOrder};
use crate::formula::{CRef, LBool, Lit};
use crate::metrics::RuleSet;
use crate::search::{PropMode, Replacement, Solver};

/// The formula was found unsatisfiable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Unsat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VivifyStatus {
    /// Checked; no literal removed.
    Unchanged,
    /// Replaced by a shorter clause with at least two literals.
    Shortened,
    /// Reduced to a unit, now asserted at level 0.
    Unit,
    /// Reduced to the empty clause, or its unit led to a level-0 conflict.
    Unsat,
    /// Satisfied at level 0; deleted without being checked.
    Satisfied,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VivifyOutcome {
    pub status: VivifyStatus,
    pub before: Vec<Lit>,
    pub after: Vec<Lit>,
    pub rules: RuleSet,
}

impl Solver {
    /// Collect the negations of the members of `d` from which a path leads to a literal of `r`
    /// in the implication graph.
    ///
    /// `d` holds the assumptions of a vivification; members of `d` are matched by variable, so
    /// a member whose variable is implied on the trail is also a stopping point. The result keeps
    /// the order of `d`.
    pub fn confl_analysis(&mut self, d: &[Lit], r: &[Lit]) -> Vec<Lit> {
        let mut marked = Vec::new();
        for &l in r {
            let v = l.var();
            if self.trail.level(v) > 0
                && !self.trail.value_var(v).is_undef()
                && !self.seen[v.index()]
            {
                self.seen[v.index()] = true;
                marked.push(v);
            }
        }
        let mut hit = Vec::new();
        let start = self.trail.level_start(1.min(self.trail.decision_level()));
        for i in (start..self.trail.len()).rev() {
            let v = self.trail.lits()[i].var();
            if !self.seen[v.index()] {
                continue;
            }
            if let Some(&m) = d.iter().find(|m| m.var() == v) {
                hit.push(m);
                continue;
            }
            let reason = self
                .trail
                .reason(v)
                .expect("marked literal above level 0 outside the assumptions is implied");
            for j in 0..self.arena[reason].len() {
                let q = self.arena[reason].lits()[j].var();
                if q != v && !self.seen[q.index()] && self.trail.level(q) > 0 {
                    self.seen[q.index()] = true;
                    marked.push(q);
                }
            }
        }
        for v in marked {
            self.seen[v.index()] = false;
        }
        d.iter().filter(|m| hit.contains(m)).map(|&m| !m).collect()
    }

    /// Vivify one stored clause at level 0 and store the result.
    pub fn vivify_clause(&mut self, cref: CRef) -> VivifyOutcome {
        self.vivify_clause_in(cref, PropMode::Vivify)
    }

    pub(crate) fn vivify_clause_in(&mut self, cref: CRef, mode: PropMode) -> VivifyOutcome {
        assert_eq!(
            self.trail.decision_level(),
            0,
            "vivification runs at level 0"
        );
        assert!(self.ok, "vivification on an unsatisfiable clause set");
        let before = self.arena[cref].lits().to_vec();
        let kind = self.arena[cref].header.kind();
        if before.iter().any(|&l| self.trail.is_true(l)) {
            self.trail.clear_root_reasons();
            self.detach(cref);
            self.remove_clause(cref);
            return VivifyOutcome {
                status: VivifyStatus::Satisfied,
                after: before.clone(),
                before,
                rules: RuleSet::default(),
            };
        }
        if self.arena[cref].header.vivified_once {
            self.metrics.kind_mut(kind).clauses_revivified += 1;
        }

        self.detach(cref);
        self.detached = Some(cref);
        let sorted = if self.config.vivify.sort_order == SortOrder::Current {
            before.clone()
        } else {
            sort_clause(
                &before,
                self.config.vivify.sort_order,
                &self.trail,
                &self.order,
                &mut self.rng,
            )
        };
        let saved_mode = self.prop_mode;
        self.prop_mode = mode;
        let (after, rules, lbd) = self.vivify_lits(&sorted);
        self.retract(0);
        self.detached = None;

        let status = match after.len() {
            _ if rules.is_empty() => {
                self.attach(cref);
                VivifyStatus::Unchanged
            }
            0 => {
                self.remove_clause(cref);
                self.ok = false;
                VivifyStatus::Unsat
            }
            1 => {
                self.remove_clause(cref);
                self.trail.assign(after[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                    VivifyStatus::Unsat
                } else {
                    VivifyStatus::Unit
                }
            }
            _ => {
                let clause = &mut self.arena[cref];
                let old_lbd = clause.header.lbd;
                clause.replace_lits(after.clone());
                clause.header.lbd = old_lbd.min(lbd).clamp(1, after.len() as u32);
                self.promote_tier(cref);
                self.attach(cref);
                VivifyStatus::Shortened
            }
        };
        self.prop_mode = saved_mode;
        if !matches!(status, VivifyStatus::Unit | VivifyStatus::Unsat) {
            let h = &mut self.arena[cref].header;
            h.vivified_once = true;
            h.lbd_decreases_since_vivify = 0;
            h.lbd_at_vivify = h.lbd;
        }
        self.metrics
            .record_vivify(kind, before.len(), after.len(), rules);
        if self.config.record_replacements && !rules.is_empty() {
            self.replacements.push(Replacement {
                kind,
                before: before.clone(),
                after: after.clone(),
                rules,
            });
        }
        VivifyOutcome {
            status,
            before,
            after,
            rules,
        }
    }

    /// Run the propagation loop over `sorted`. Returns the resulting literals, the rules that
    /// removed literals, and the LBD of the result under the vivification trail. Leaves the
    /// assumptions on the trail.
    fn vivify_lits(&mut self, sorted: &[Lit]) -> (Vec<Lit>, RuleSet, u32) {
        let mut d: Vec<Lit> = Vec::with_capacity(sorted.len());
        let mut kept: Vec<Lit> = Vec::with_capacity(sorted.len());
        let mut dropped = 0usize;
        let mut analyzed: Option<(Vec<Lit>, bool)> = None;
        for &l in sorted {
            match self.trail.value(l) {
                LBool::False => dropped += 1,
                LBool::True => {
                    let reason = self
                        .trail
                        .reason(l.var())
                        .expect("a literal made true by vivification is implied");
                    let r: Vec<Lit> = self.arena[reason]
                        .lits()
                        .iter()
                        .map(|&q| if q == l { !l } else { q })
                        .collect();
                    d.push(!l);
                    let out = self.confl_analysis(&d, &r);
                    assert!(out.contains(&l), "analysis of a true literal keeps it");
                    analyzed = Some((out, true));
                    break;
                }
                LBool::Undef => {
                    self.trail.new_level();
                    self.trail.assign(!l, None);
                    d.push(!l);
                    kept.push(l);
                    if let Some(confl) = self.propagate() {
                        let r = self.arena[confl].lits().to_vec();
                        analyzed = Some((self.confl_analysis(&d, &r), false));
                        break;
                    }
                }
            }
        }
        let mut rules = RuleSet {
            rule1: dropped > 0,
            ..RuleSet::default()
        };
        let result = match analyzed {
            Some((out, rule2)) => {
                if out.len() < sorted.len() - dropped {
                    if rule2 {
                        rules.rule2 = true;
                    } else {
                        rules.rule3 = true;
                    }
                }
                out
            }
            None => kept,
        };
        let lbd = if result.is_empty() {
            0
        } else {
            self.lbd_counter.count(&result, &self.trail)
        };
        (result, rules, lbd)
    }

    /// Vivify the selected learnt clauses, then the selected original clauses.
    pub(crate) fn vivify_all(&mut self) -> Result<(), Unsat> {
        assert_eq!(self.trail.decision_level(), 0);
        let selection = self.config.vivify.selection;
        let fraction = match selection {
            Selection::GlucoseHalf => Some(0.5),
            Selection::GlucoseFraction(f) => Some(f),
            _ => None,
        };
        let mut in_fraction = vec![false; self.arena.capacity()];
        if let Some(f) = fraction {
            let mut ls = self.learnts();
            ls.sort_by(|&a, &b| {
                let (ha, hb) = (&self.arena[a].header, &self.arena[b].header);
                hb.lbd
                    .cmp(&ha.lbd)
                    .then(ha.activity.total_cmp(&hb.activity))
                    .then(a.cmp(&b))
            });
            let n = ls.len();
            let skip = n - (f * n as f64).floor() as usize;
            for &c in &ls[skip..] {
                in_fraction[c.index()] = true;
            }
        }
        let mut learnts = self.learnts();
        learnts.sort();
        let mut originals = self.originals();
        originals.sort();
        let mut result = Ok(());
        for cref in learnts.into_iter().chain(originals) {
            if self.arena.is_deleted(cref) {
                continue;
            }
            let satisfied = self.arena[cref]
                .lits()
                .iter()
                .any(|&l| self.trail.is_true(l));
            if satisfied {
                self.trail.clear_root_reasons();
                self.detach(cref);
                self.remove_clause(cref);
                continue;
            }
            if !live_clause(
                &self.arena[cref].header,
                selection,
                in_fraction[cref.index()],
            ) {
                continue;
            }
            if self.vivify_clause_in(cref, PropMode::Vivify).status == VivifyStatus::Unsat {
                result = Err(Unsat);
                break;
            }
        }
        for &c in &self.originals {
            if !self.arena.is_deleted(c) {
                self.arena[c].header.used_in_useful_conflict = false;
            }
        }
        self.viv.new_learnts = 0;
        self.viv.passes += 1;
        self.metrics.vivify_passes += 1;
        self.collect_garbage();
        // after a refutation the level-0 assignment is contradictory by design
        if self.config.check_invariants && result.is_ok() {
            if let Err(e) = self
                .check_level0_purity()
                .and_then(|_| self.check_integrity())
            {
                panic!("integrity violation after vivification: {e}");
            }
        }
        result
    }

    /// Run a pass if the activation policy says so.
    pub(crate) fn vivify_if_promising(&mut self) -> Result<(), Unsat> {
        let activation = self.config.vivify.activation;
        if live_restart(&self.viv, activation, self.db.reduction_fired_since_restart) {
            self.vivify_all()
        } else {
            Ok(())
        }
    }

    /// Vivify original clauses in input order until the propagation budget is used up.
    pub(crate) fn preprocess_vivify(&mut self) -> Result<(), Unsat> {
        let cap = self.config.vivify.preprocess_cap;
        let originals = self.originals.clone();
        let mut result = Ok(());
        for cref in originals {
            if self.metrics.preprocess_propagations >= cap {
                break;
            }
            if self.arena.is_deleted(cref) {
                continue;
            }
            let spent = self.metrics.preprocess_propagations;
            let out = self.vivify_clause_in(cref, PropMode::Preprocess);
            self.metrics.preprocess_last_clause_propagations =
                self.metrics.preprocess_propagations - spent;
            match out.status {
                VivifyStatus::Satisfied => {}
                VivifyStatus::Unsat => {
                    self.metrics.preprocess_clauses_checked += 1;
                    result = Err(Unsat);
                    break;
                }
                _ => self.metrics.preprocess_clauses_checked += 1,
            }
        }
        self.collect_garbage();
        if self.config.check_invariants && result.is_ok() {
            if let Err(e) = self
                .check_level0_purity()
                .and_then(|_| self.check_integrity())
            {
                panic!("integrity violation after preprocessing: {e}");
            }
        }
        result
    }

    /// Run the preprocessing pass now, outside of [`solve`](Self::solve). Returns `false` if
    /// it proved the clauses unsatisfiable.
    pub fn preprocess(&mut self) -> bool {
        if !self.ok {
            return false;
        }
        if self.propagate().is_some() {
            self.ok = false;
            return false;
        }
        self.preprocessed = true;
        if self.preprocess_vivify().is_err() {
            self.ok = false;
        }
        self.ok
    }

    /// Run one in-search vivification pass now, regardless of the activation policy.
    /// Returns `false` if it proved the clauses unsatisfiable.
    pub fn vivify_pass(&mut self) -> bool {
        if !self.ok {
            return false;
        }
        if self.propagate().is_some() {
            self.ok = false;
            return false;
        }
        if self.vivify_all().is_err() {
            self.ok = false;
        }
        self.ok
    }
}
