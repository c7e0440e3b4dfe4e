//! The CDCL engine: trail, watched-literal propagation, VSIDS decisions, first-UIP learning and
//! the restart loop that interleaves search with vivification.
mod analyze;
mod order;
mod propagate;
mod trail;

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clause_db::{DbState, LbdCounter, ReduceConfig, TierConfig};
use crate::formula::{
    normalize_clause, CRef, Clause, ClauseArena, ClauseHeader, ClauseKind, Formula, Lit, Var,
};
use crate::metrics::{MetricsAccumulator, RuleSet};
use crate::restart::{RestartConfig, RestartState};
use crate::vivify::{VivifyConfig, VivifyState};

pub use analyze::Analysis;
pub use order::VarOrder;
pub(crate) use propagate::Watcher;
pub use trail::{Trail, NEVER_ASSIGNED};

/// Optional resource limits. Exhausting any of them ends the search with an unknown answer.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub conflicts: Option<u64>,
    pub propagations: Option<u64>,
    /// Wall-clock seconds.
    pub time_secs: Option<f64>,
}

/// Learnt clause minimization switches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimizeConfig {
    pub recursive: bool,
    pub binary: bool,
    /// Binary minimization only runs on clauses of at most this size...
    pub binary_max_size: usize,
    /// ...and at most this LBD.
    pub binary_max_lbd: u32,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            recursive: true,
            binary: true,
            binary_max_size: 30,
            binary_max_lbd: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Initial VSIDS decay factor.
    pub var_decay: f64,
    /// The decay factor grows by `var_decay_step` every `var_decay_interval` conflicts up to
    /// this value.
    pub var_decay_max: f64,
    pub var_decay_step: f64,
    pub var_decay_interval: u64,
    pub clause_decay: f64,
    pub seed: u64,
    pub phase_saving: bool,
    pub restart: RestartConfig,
    pub reduce: ReduceConfig,
    pub tiers: TierConfig,
    pub vivify: VivifyConfig,
    pub minimize: MinimizeConfig,
    pub budget: Budget,
    /// Verify watch, reason and level-0 invariants at every propagation fixpoint. Slow.
    pub check_invariants: bool,
    /// Keep a log of every clause replaced by vivification.
    pub record_replacements: bool,
    /// Keep the sequence of decision literals.
    pub trace_decisions: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            var_decay: 0.95,
            var_decay_max: 0.99,
            var_decay_step: 0.01,
            var_decay_interval: 5000,
            clause_decay: 0.999,
            seed: 0,
            phase_saving: true,
            restart: RestartConfig::default(),
            reduce: ReduceConfig::default(),
            tiers: TierConfig::default(),
            vivify: VivifyConfig::default(),
            minimize: MinimizeConfig::default(),
            budget: Budget::default(),
            check_invariants: false,
            record_replacements: false,
            trace_decisions: false,
        }
    }
}

impl SolverConfig {
    /// Panics on out-of-range parameters.
    pub fn validate(&self) {
        for (name, d) in [
            ("var_decay", self.var_decay),
            ("var_decay_max", self.var_decay_max),
            ("clause_decay", self.clause_decay),
        ] {
            assert!(d > 0.0 && d <= 1.0, "{name} must be in (0, 1], got {d}");
        }
        assert!(
            1 <= self.tiers.t1 && self.tiers.t1 < self.tiers.t2,
            "tier thresholds must satisfy 1 <= t1 < t2"
        );
        assert!(self.reduce.first > 0, "reduce.first must be positive");
        self.vivify.validate();
    }
}

/// Final answer of a solver run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Sat,
    Unsat,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Sat => "SATISFIABLE",
            Answer::Unsat => "UNSATISFIABLE",
            Answer::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    /// A model indexed by variable.
    Sat(Vec<bool>),
    Unsat,
    /// A budget ran out.
    Unknown,
}

impl SolveResult {
    pub fn answer(&self) -> Answer {
        match self {
            SolveResult::Sat(_) => Answer::Sat,
            SolveResult::Unsat => Answer::Unsat,
            SolveResult::Unknown => Answer::Unknown,
        }
    }
}

/// A clause shortened by vivification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replacement {
    pub kind: ClauseKind,
    pub before: Vec<Lit>,
    pub after: Vec<Lit>,
    pub rules: RuleSet,
}

/// Which counter propagated literals are charged to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PropMode {
    Search,
    Vivify,
    Preprocess,
}

pub struct Solver {
    pub(crate) config: SolverConfig,
    pub(crate) arena: ClauseArena,
    /// `watches[l.code()]`: clauses with `l` at position 0 or 1.
    pub(crate) watches: Vec<Vec<Watcher>>,
    pub(crate) trail: Trail,
    pub(crate) order: VarOrder,
    pub(crate) originals: Vec<CRef>,
    pub(crate) learnts: Vec<CRef>,
    /// Input clauses as given, for model verification.
    pub(crate) input: Vec<Vec<Lit>>,
    pub(crate) ok: bool,
    pub(crate) restart: RestartState,
    pub(crate) metrics: MetricsAccumulator,
    pub(crate) viv: VivifyState,
    pub(crate) db: DbState,
    pub(crate) cla_inc: f64,
    pub(crate) seen: Vec<bool>,
    pub(crate) dist: Vec<u32>,
    pub(crate) analyze_stack: Vec<Lit>,
    pub(crate) analyze_clear: Vec<Var>,
    pub(crate) lbd_counter: LbdCounter,
    pub(crate) prop_mode: PropMode,
    /// Clause temporarily removed from the watch lists by vivification.
    pub(crate) detached: Option<CRef>,
    pub(crate) rng: ChaCha8Rng,
    pub(crate) replacements: Vec<Replacement>,
    pub(crate) decision_trace: Vec<Lit>,
    pub(crate) start: Option<Instant>,
    pub(crate) preprocessed: bool,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Solver {
        config.validate();
        let db = DbState {
            next_local_reduce: config.reduce.local_interval,
            next_tier2_sweep: config.reduce.tier2_sweep_interval,
            ..DbState::default()
        };
        Solver {
            arena: ClauseArena::new(),
            watches: Vec::new(),
            trail: Trail::new(0),
            order: VarOrder::new(0, config.var_decay, config.phase_saving),
            originals: Vec::new(),
            learnts: Vec::new(),
            input: Vec::new(),
            ok: true,
            restart: RestartState::new(config.restart.clone()),
            metrics: MetricsAccumulator::new(),
            viv: VivifyState::default(),
            db,
            cla_inc: 1.0,
            seen: Vec::new(),
            dist: Vec::new(),
            analyze_stack: Vec::new(),
            analyze_clear: Vec::new(),
            lbd_counter: LbdCounter::default(),
            prop_mode: PropMode::Search,
            detached: None,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            replacements: Vec::new(),
            decision_trace: Vec::new(),
            start: None,
            preprocessed: false,
            config,
        }
    }

    /// Load every clause of `formula`, in order.
    pub fn from_formula(formula: &Formula, config: SolverConfig) -> Solver {
        let mut s = Solver::new(config);
        s.reserve_vars(formula.num_vars());
        if formula.has_empty_clause() {
            s.ok = false;
        }
        for c in formula.clauses() {
            s.add_clause(c);
        }
        s
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn num_vars(&self) -> usize {
        self.trail.num_vars()
    }

    /// False once the clauses are known to be unsatisfiable.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    pub fn metrics(&self) -> &MetricsAccumulator {
        &self.metrics
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn clause(&self, cref: CRef) -> &Clause {
        &self.arena[cref]
    }

    /// Live input clauses, in insertion order.
    pub fn originals(&self) -> Vec<CRef> {
        self.live(&self.originals)
    }

    /// Live learnt clauses, in creation order.
    pub fn learnts(&self) -> Vec<CRef> {
        self.live(&self.learnts)
    }

    fn live(&self, refs: &[CRef]) -> Vec<CRef> {
        refs.iter()
            .copied()
            .filter(|&c| !self.arena.is_deleted(c))
            .collect()
    }

    /// Clauses replaced by vivification so far (only with `record_replacements`).
    pub fn replacements(&self) -> &[Replacement] {
        &self.replacements
    }

    /// Decision literals so far (only with `trace_decisions`).
    pub fn decision_trace(&self) -> &[Lit] {
        &self.decision_trace
    }

    /// Ensure variables `0..n` exist.
    pub fn reserve_vars(&mut self, n: usize) {
        if n <= self.num_vars() {
            return;
        }
        self.trail.grow(n);
        self.order.grow(n);
        self.watches.resize_with(2 * n, Vec::new);
        self.seen.resize(n, false);
        self.dist.resize(n, 0);
    }

    /// Add an input clause at level 0. Returns `false` once the clauses are unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        assert_eq!(
            self.trail.decision_level(),
            0,
            "clauses are added at level 0"
        );
        if !self.ok {
            return false;
        }
        if let Some(max) = lits.iter().map(|l| l.var().index() + 1).max() {
            self.reserve_vars(max);
        }
        let Some(clause) = normalize_clause(lits) else {
            return true;
        };
        self.input.push(clause.clone());
        if clause.iter().any(|&l| self.trail.is_true(l)) {
            return true;
        }
        let clause: Vec<Lit> = clause
            .into_iter()
            .filter(|&l| !self.trail.is_false(l))
            .collect();
        match clause.len() {
            0 => self.ok = false,
            1 => {
                self.trail.assign(clause[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            n => {
                let cref = self.arena.alloc(clause, ClauseHeader::original(n));
                self.attach(cref);
                self.originals.push(cref);
            }
        }
        self.ok
    }

    /// Add a learnt clause directly, e.g. to seed a database for testing. The clause must not
    /// be unit or falsified under the current trail.
    pub fn add_learnt(&mut self, lits: &[Lit], lbd: u32) -> CRef {
        assert!(
            lits.len() >= 2,
            "learnt clauses added directly need two literals"
        );
        let lbd = lbd.clamp(1, lits.len() as u32);
        let tier = self.config.tiers.tier_for(lbd);
        let header = ClauseHeader::learnt(lbd, tier, self.metrics.conflicts);
        let cref = self.arena.alloc(lits.to_vec(), header);
        self.attach(cref);
        self.learnts.push(cref);
        cref
    }

    /// Open a new decision level and assert `lit` without a reason.
    pub fn push_decision(&mut self, lit: Lit) {
        assert!(
            self.trail.value(lit).is_undef(),
            "decision on assigned literal {lit}"
        );
        self.trail.new_level();
        self.trail.assign(lit, None);
    }

    /// Undo every assignment above `level`, saving phases.
    pub fn backtrack(&mut self, level: u32) {
        let order = &mut self.order;
        self.trail.backtrack(level, |l| order.on_unassign(l, true));
    }

    /// Backtrack without touching saved phases; used to retract vivification assumptions.
    pub(crate) fn retract(&mut self, level: u32) {
        let order = &mut self.order;
        self.trail.backtrack(level, |l| order.on_unassign(l, false));
    }

    /// Pick and assert the next decision. Returns `false` when every variable is assigned.
    pub fn decide(&mut self) -> bool {
        let trail = &self.trail;
        match self.order.pick(|v| !trail.value_var(v).is_undef()) {
            Some(lit) => {
                self.metrics.decisions += 1;
                if self.config.trace_decisions {
                    self.decision_trace.push(lit);
                }
                self.trail.new_level();
                self.trail.assign(lit, None);
                true
            }
            None => false,
        }
    }

    pub(crate) fn remove_clause(&mut self, cref: CRef) {
        self.arena.delete(cref);
        self.metrics.deleted_clauses += 1;
    }

    /// Drop watchers of deleted clauses and recycle their slots. No reason may point at a
    /// deleted clause.
    pub(crate) fn collect_garbage(&mut self) {
        let arena = &self.arena;
        for ws in &mut self.watches {
            ws.retain(|w| !arena.is_deleted(w.cref));
        }
        self.learnts.retain(|&c| !arena.is_deleted(c));
        self.originals.retain(|&c| !arena.is_deleted(c));
        self.arena.reclaim();
    }

    fn budget_exhausted(&self) -> bool {
        let b = &self.config.budget;
        if b.conflicts.is_some_and(|n| self.metrics.conflicts >= n) {
            return true;
        }
        if b.propagations.is_some_and(|n| {
            self.metrics.search_propagations
                + self.metrics.vivify_propagations
                + self.metrics.preprocess_propagations
                >= n
        }) {
            return true;
        }
        match (b.time_secs, self.start) {
            (Some(limit), Some(start)) => start.elapsed().as_secs_f64() >= limit,
            _ => false,
        }
    }

    /// Run the solver to completion or until a budget is exhausted.
    pub fn solve(&mut self) -> SolveResult {
        let start = Instant::now();
        self.start = Some(start);
        let result = self.solve_inner();
        if let SolveResult::Sat(model) = &result {
            for clause in &self.input {
                assert!(
                    clause
                        .iter()
                        .any(|l| model[l.var().index()] == l.is_positive()),
                    "model violates input clause {clause:?}"
                );
            }
        }
        self.metrics.search_time_secs =
            start.elapsed().as_secs_f64() - self.metrics.preprocess_time_secs;
        result
    }

    fn solve_inner(&mut self) -> SolveResult {
        if !self.ok {
            return SolveResult::Unsat;
        }
        if self.propagate().is_some() {
            self.ok = false;
            return SolveResult::Unsat;
        }
        if self.config.vivify.enabled && self.config.vivify.preprocess && !self.preprocessed {
            self.preprocessed = true;
            let t = Instant::now();
            let res = self.preprocess_vivify();
            self.metrics.preprocess_time_secs = t.elapsed().as_secs_f64();
            if res.is_err() {
                self.ok = false;
                return SolveResult::Unsat;
            }
        }
        loop {
            if self.budget_exhausted() {
                return SolveResult::Unknown;
            }
            if self.config.vivify.enabled && self.vivify_if_promising().is_err() {
                self.ok = false;
                return SolveResult::Unsat;
            }
            self.db.reduction_fired_since_restart = false;
            if let Some(result) = self.search() {
                return result;
            }
        }
    }

    /// Search until a restart (returns `None`) or a final answer.
    fn search(&mut self) -> Option<SolveResult> {
        loop {
            if let Some(confl) = self.propagate() {
                self.metrics.conflicts += 1;
                if self.trail.decision_level() == 0 {
                    self.ok = false;
                    return Some(SolveResult::Unsat);
                }
                self.handle_conflict(confl);
                if self.budget_exhausted() {
                    self.backtrack(0);
                    return Some(SolveResult::Unknown);
                }
            } else {
                if self.config.check_invariants {
                    if let Err(e) = self.check_integrity() {
                        panic!("integrity violation: {e}");
                    }
                }
                if self.restart.should_restart() {
                    self.restart.on_restart();
                    self.metrics.restarts += 1;
                    self.backtrack(0);
                    return None;
                }
                if self.reduce_due() {
                    self.reduce();
                    continue;
                }
                if !self.decide() {
                    let model = (0..self.num_vars())
                        .map(|v| self.trail.is_true(Var::new(v as u32).positive()))
                        .collect();
                    self.backtrack(0);
                    return Some(SolveResult::Sat(model));
                }
            }
        }
    }

    fn handle_conflict(&mut self, confl: CRef) {
        let analysis = self.analyze(confl);
        self.backtrack(analysis.backtrack_level);
        let lbd = analysis.lbd;
        let lits = analysis.learnt;
        if lits.len() == 1 {
            self.trail.assign(lits[0], None);
        } else {
            let first = lits[0];
            let cref = self.add_learnt(&lits, lbd);
            self.bump_clause(cref);
            self.trail.assign(first, Some(cref));
        }
        self.order.decay();
        self.decay_clause_activity();
        let c = self.metrics.conflicts;
        let cfg = &self.config;
        if c.is_multiple_of(cfg.var_decay_interval) && self.order.decay_factor() < cfg.var_decay_max
        {
            let next = (self.order.decay_factor() + cfg.var_decay_step).min(cfg.var_decay_max);
            self.order.set_decay(next);
        }
        self.restart.on_learnt(lbd);
        self.viv.new_learnts += 1;
        self.metrics.record_learnt_lbd(lbd);
    }

    /// Check watch, reason and level-0 invariants. Meaningful at a propagation fixpoint.
    pub fn check_integrity(&self) -> Result<(), String> {
        // every live, attached clause is watched exactly at positions 0 and 1
        let mut watched_at: Vec<Vec<Lit>> = vec![Vec::new(); self.arena.capacity()];
        for (code, ws) in self.watches.iter().enumerate() {
            for w in ws {
                if !self.arena.is_deleted(w.cref) {
                    watched_at[w.cref.index()].push(Lit::from_code(code as u32));
                }
            }
        }
        let mut position = vec![usize::MAX; self.num_vars()];
        for (i, l) in self.trail.lits().iter().enumerate() {
            position[l.var().index()] = i;
        }
        for cref in self.arena.iter_refs() {
            if Some(cref) == self.detached {
                continue;
            }
            let c = &self.arena[cref];
            let lits = c.lits();
            if lits.len() < 2 {
                return Err(format!(
                    "stored clause {cref:?} has fewer than two literals"
                ));
            }
            let mut w = watched_at[cref.index()].clone();
            w.sort();
            let mut expect = vec![lits[0], lits[1]];
            expect.sort();
            if w != expect {
                return Err(format!(
                    "clause {cref:?} {lits:?} watched at {w:?}, expected {expect:?}"
                ));
            }
            if c.header.lbd as usize > lits.len() || c.header.lbd == 0 {
                return Err(format!("clause {cref:?} has LBD {} > size", c.header.lbd));
            }
            if self.trail.all_propagated() {
                for &wl in &lits[..2] {
                    if self.trail.is_false(wl) {
                        let lvl = self.trail.level(wl.var());
                        let covered = lits
                            .iter()
                            .any(|&l| self.trail.is_true(l) && self.trail.level(l.var()) <= lvl);
                        if !covered {
                            return Err(format!(
                                "clause {cref:?} {lits:?} has false watch {wl} at level {lvl} \
                                 without a true literal at or below it"
                            ));
                        }
                    }
                }
            }
        }
        for (i, &l) in self.trail.lits().iter().enumerate() {
            let Some(r) = self.trail.reason(l.var()) else {
                continue;
            };
            if self.arena.is_deleted(r) {
                return Err(format!("{l} has deleted reason {r:?}"));
            }
            let lits = self.arena[r].lits();
            if lits[0] != l {
                return Err(format!(
                    "reason {r:?} {lits:?} of {l} does not start with it"
                ));
            }
            for &o in &lits[1..] {
                let p = position[o.var().index()];
                if !self.trail.is_false(o) || p >= i {
                    return Err(format!(
                        "reason {r:?} {lits:?} of {l}: {o} not false before it"
                    ));
                }
            }
        }
        Ok(())
    }

    /// The trail holds only propagated level-0 facts.
    pub fn check_level0_purity(&self) -> Result<(), String> {
        if self.trail.decision_level() != 0 {
            return Err(format!(
                "decision level {} after vivification",
                self.trail.decision_level()
            ));
        }
        if let Some(l) = self
            .trail
            .lits()
            .iter()
            .find(|l| self.trail.level(l.var()) != 0)
        {
            return Err(format!("{l} on the trail above level 0"));
        }
        if self.ok && !self.trail.all_propagated() {
            return Err("unpropagated level-0 literals".into());
        }
        Ok(())
    }
}
