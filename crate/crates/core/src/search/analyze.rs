//! First-UIP conflict analysis and learnt clause minimization.
//!
//! The learnt clause starts with the negated first UIP. The remaining literals are ordered by
//! their breadth-first distance to the conflict in the implication graph, except that the first
//! literal of the second-highest level is moved to position 1 so that it can be watched.
use super::Solver;
use crate::formula::{CRef, Lit, Var};

/// Result of analyzing one conflict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    /// Asserting clause after minimization.
    pub learnt: Vec<Lit>,
    /// First-UIP clause before minimization, in the same literal order.
    pub first_uip_clause: Vec<Lit>,
    /// Second-highest level of the learnt clause, 0 for a unit.
    pub backtrack_level: u32,
    pub lbd: u32,
}

impl Solver {
    /// Derive the first-UIP clause of a conflict, minimize it, and update the activity and LBD
    /// of every clause involved. The current level must be above 0.
    pub fn analyze(&mut self, conflict: CRef) -> Analysis {
        let level = self.trail.decision_level();
        assert!(level > 0, "conflict analysis at level 0");
        let mut used = Vec::new();
        let mut lower: Vec<Lit> = Vec::new();
        let mut path = 0usize;
        let mut index = self.trail.len();
        let mut p: Option<Lit> = None;
        let mut cref = conflict;
        loop {
            used.push(cref);
            let d = p.map_or(0, |p| self.dist[p.var().index()]);
            let lits = self.arena[cref].lits();
            for &q in lits {
                if Some(q) == p {
                    continue;
                }
                let v = q.var();
                let vi = v.index();
                if self.seen[vi] {
                    self.dist[vi] = self.dist[vi].min(d + 1);
                    continue;
                }
                let lvl = self.trail.level(v);
                if lvl == 0 {
                    continue;
                }
                self.seen[vi] = true;
                self.dist[vi] = d + 1;
                self.analyze_clear.push(v);
                self.order.bump(v);
                if lvl == level {
                    path += 1;
                } else {
                    lower.push(q);
                }
            }
            let next = loop {
                index -= 1;
                let l = self.trail.lits()[index];
                if self.seen[l.var().index()] {
                    break l;
                }
            };
            p = Some(next);
            path -= 1;
            if path == 0 {
                break;
            }
            cref = self
                .trail
                .reason(next.var())
                .expect("implied literal has a reason");
        }
        let uip = p.expect("conflict has a current-level literal");
        lower.sort_by_key(|l| self.dist[l.var().index()]);
        for v in self.analyze_clear.drain(..) {
            self.seen[v.index()] = false;
        }
        let mut learnt = Vec::with_capacity(lower.len() + 1);
        learnt.push(!uip);
        learnt.extend(lower);
        let first_uip_clause = learnt.clone();

        if self.config.minimize.recursive {
            learnt = self.recursive_minimize(&learnt);
        }
        if self.config.minimize.binary && learnt.len() <= self.config.minimize.binary_max_size {
            let lbd = self.lbd_counter.count(&learnt, &self.trail);
            if lbd <= self.config.minimize.binary_max_lbd {
                learnt = self.binary_self_subsume(&learnt);
            }
        }

        let mut backtrack_level = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for (i, l) in learnt.iter().enumerate().skip(1) {
                let lvl = self.trail.level(l.var());
                if lvl > backtrack_level {
                    backtrack_level = lvl;
                    best = i;
                }
            }
            learnt[1..=best].rotate_right(1);
        }
        let lbd = self.lbd_counter.count(&learnt, &self.trail);
        for cref in used {
            self.on_clause_used(cref, lbd);
        }
        Analysis {
            learnt,
            first_uip_clause,
            backtrack_level,
            lbd,
        }
    }

    /// Remove literals implied by the other literals of a learnt clause through the implication
    /// graph. The first literal is kept. All literals must be false on the trail.
    pub fn recursive_minimize(&mut self, lits: &[Lit]) -> Vec<Lit> {
        if lits.len() <= 1 {
            return lits.to_vec();
        }
        for &l in lits {
            self.seen[l.var().index()] = true;
        }
        let mut abstract_levels = 0u32;
        for &l in &lits[1..] {
            abstract_levels |= self.abstract_level(l.var());
        }
        let mut out = vec![lits[0]];
        for &l in &lits[1..] {
            if self.trail.reason(l.var()).is_none() || !self.lit_redundant(l, abstract_levels) {
                out.push(l);
            }
        }
        for &l in lits {
            self.seen[l.var().index()] = false;
        }
        for v in self.analyze_clear.drain(..) {
            self.seen[v.index()] = false;
        }
        out
    }

    fn abstract_level(&self, v: Var) -> u32 {
        1 << (self.trail.level(v) & 31)
    }

    /// Is every path into `lit`'s variable cut by variables already marked `seen`?
    fn lit_redundant(&mut self, lit: Lit, abstract_levels: u32) -> bool {
        self.analyze_stack.clear();
        self.analyze_stack.push(lit);
        let top = self.analyze_clear.len();
        while let Some(q) = self.analyze_stack.pop() {
            let r = self
                .trail
                .reason(q.var())
                .expect("expanded literals are implied");
            for i in 0..self.arena[r].len() {
                let l = self.arena[r].lits()[i];
                let v = l.var();
                if v == q.var() || self.seen[v.index()] || self.trail.level(v) == 0 {
                    continue;
                }
                if self.trail.reason(v).is_some() && self.abstract_level(v) & abstract_levels != 0 {
                    self.seen[v.index()] = true;
                    self.analyze_stack.push(l);
                    self.analyze_clear.push(v);
                } else {
                    for v in self.analyze_clear.drain(top..) {
                        self.seen[v.index()] = false;
                    }
                    return false;
                }
            }
        }
        true
    }

    /// Remove every `l` (after the first literal `l1`) for which the binary clause `l1 ∨ ¬l`
    /// exists.
    pub fn binary_self_subsume(&mut self, lits: &[Lit]) -> Vec<Lit> {
        if lits.len() <= 1 {
            return lits.to_vec();
        }
        let l1 = lits[0];
        for &l in &lits[1..] {
            self.seen[l.var().index()] = true;
        }
        let mut drop = Vec::new();
        for w in &self.watches[l1.code()] {
            if self.arena.is_deleted(w.cref) {
                continue;
            }
            let c = self.arena[w.cref].lits();
            if c.len() != 2 {
                continue;
            }
            let other = if c[0] == l1 { c[1] } else { c[0] };
            if self.seen[other.var().index()] && lits[1..].contains(&!other) {
                drop.push(!other);
            }
        }
        for &l in &lits[1..] {
            self.seen[l.var().index()] = false;
        }
        if drop.is_empty() {
            return lits.to_vec();
        }
        lits.iter().copied().filter(|l| !drop.contains(l)).collect()
    }
}
