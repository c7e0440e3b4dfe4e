//! Assignment trail: the implication graph in flattened form.
use crate::formula::{CRef, LBool, Lit, Var};

/// Level marker for variables that were never assigned.
pub const NEVER_ASSIGNED: u32 = u32::MAX;

#[derive(Debug, Default, Clone)]
pub struct Trail {
    values: Vec<LBool>,
    levels: Vec<u32>,
    reasons: Vec<Option<CRef>>,
    lits: Vec<Lit>,
    lim: Vec<usize>,
    pub(crate) qhead: usize,
}

impl Trail {
    pub fn new(num_vars: usize) -> Trail {
        Trail {
            values: vec![LBool::Undef; num_vars],
            levels: vec![NEVER_ASSIGNED; num_vars],
            reasons: vec![None; num_vars],
            ..Trail::default()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn value_var(&self, var: Var) -> LBool {
        self.values[var.index()]
    }

    #[inline]
    pub fn value(&self, lit: Lit) -> LBool {
        let v = self.values[lit.var().index()];
        if lit.is_negative() {
            v.negate()
        } else {
            v
        }
    }

    #[inline]
    pub fn is_true(&self, lit: Lit) -> bool {
        self.value(lit) == LBool::True
    }

    #[inline]
    pub fn is_false(&self, lit: Lit) -> bool {
        self.value(lit) == LBool::False
    }

    /// Decision level of the variable's current assignment, or of its most recent one if it is
    /// unassigned ([`NEVER_ASSIGNED`] if it never was).
    #[inline]
    pub fn level(&self, var: Var) -> u32 {
        self.levels[var.index()]
    }

    #[inline]
    pub fn reason(&self, var: Var) -> Option<CRef> {
        self.reasons[var.index()]
    }

    #[inline]
    pub fn decision_level(&self) -> u32 {
        self.lim.len() as u32
    }

    /// Asserted literals in assertion order.
    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// Index into [`lits`](Self::lits) where `level` starts.
    pub fn level_start(&self, level: u32) -> usize {
        if level == 0 {
            0
        } else {
            self.lim[level as usize - 1]
        }
    }

    pub fn all_propagated(&self) -> bool {
        self.qhead == self.lits.len()
    }

    pub fn new_level(&mut self) {
        self.lim.push(self.lits.len());
    }

    /// Assert `lit` at the current level.
    #[inline]
    pub fn assign(&mut self, lit: Lit, reason: Option<CRef>) {
        let v = lit.var().index();
        debug_assert_eq!(self.values[v], LBool::Undef, "{lit:?} already assigned");
        self.values[v] = LBool::from_bool(lit.is_positive());
        self.levels[v] = self.lim.len() as u32;
        self.reasons[v] = reason;
        self.lits.push(lit);
    }

    /// Undo all assignments above `level`, calling `on_unassign` for each undone literal from
    /// the most recent one down.
    pub fn backtrack(&mut self, level: u32, mut on_unassign: impl FnMut(Lit)) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.lim[level as usize];
        for i in (start..self.lits.len()).rev() {
            let lit = self.lits[i];
            let v = lit.var().index();
            self.values[v] = LBool::Undef;
            self.reasons[v] = None;
            on_unassign(lit);
        }
        self.lits.truncate(start);
        self.lim.truncate(level as usize);
        self.qhead = self.qhead.min(start);
    }

    /// Forget reasons of level-0 literals; they are facts and their clauses may be deleted.
    pub(crate) fn clear_root_reasons(&mut self) {
        let end = if self.lim.is_empty() {
            self.lits.len()
        } else {
            self.lim[0]
        };
        for &lit in &self.lits[..end] {
            self.reasons[lit.var().index()] = None;
        }
    }

    pub(crate) fn grow(&mut self, num_vars: usize) {
        if num_vars > self.values.len() {
            self.values.resize(num_vars, LBool::Undef);
            self.levels.resize(num_vars, NEVER_ASSIGNED);
            self.reasons.resize(num_vars, None);
        }
    }
}
