//! Unit propagation over two watched literals.
//!
//! Every stored clause watches its first two positions. When a watched literal becomes false the
//! clause is visited: a non-false literal from the tail is swapped into the watch position, which
//! pushes the falsified literal towards the end of the clause. A blocker literal per watcher
//! lets satisfied clauses be skipped without touching clause memory.
use super::{PropMode, Solver};
use crate::formula::{CRef, Lit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Watcher {
    pub(crate) cref: CRef,
    /// Some literal of the clause; if it is true the clause need not be visited.
    pub(crate) blocker: Lit,
}

impl Solver {
    pub(crate) fn attach(&mut self, cref: CRef) {
        let lits = self.arena[cref].lits();
        debug_assert!(lits.len() >= 2);
        let (a, b) = (lits[0], lits[1]);
        self.watches[a.code()].push(Watcher { cref, blocker: b });
        self.watches[b.code()].push(Watcher { cref, blocker: a });
    }

    pub(crate) fn detach(&mut self, cref: CRef) {
        let lits = self.arena[cref].lits();
        let (a, b) = (lits[0], lits[1]);
        for l in [a, b] {
            let ws = &mut self.watches[l.code()];
            let pos = ws
                .iter()
                .position(|w| w.cref == cref)
                .expect("attached clause is watched");
            ws.remove(pos);
        }
    }

    /// Propagate all queued literals. Returns a falsified clause on conflict.
    pub fn propagate(&mut self) -> Option<CRef> {
        let mut conflict = None;
        let mut propagated = 0u64;
        while self.trail.qhead < self.trail.len() {
            let p = self.trail.lits()[self.trail.qhead];
            self.trail.qhead += 1;
            propagated += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.trail.is_true(w.blocker) {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                if self.arena.is_deleted(w.cref) {
                    continue;
                }
                let lits = self.arena[w.cref].lits_mut();
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                debug_assert_eq!(lits[1], false_lit);
                let first = lits[0];
                let nw = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && self.trail.is_true(first) {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                for k in 2..lits.len() {
                    if !self.trail.is_false(lits[k]) {
                        lits[1] = lits[k];
                        lits[k] = false_lit;
                        self.watches[lits[1].code()].push(nw);
                        continue 'watchers;
                    }
                }
                ws[j] = nw;
                j += 1;
                if self.trail.is_false(first) {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.trail.assign(first, Some(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                self.trail.qhead = self.trail.len();
                break;
            }
        }
        match self.prop_mode {
            PropMode::Search => self.metrics.search_propagations += propagated,
            PropMode::Vivify => self.metrics.vivify_propagations += propagated,
            PropMode::Preprocess => self.metrics.preprocess_propagations += propagated,
        }
        conflict
    }
}
