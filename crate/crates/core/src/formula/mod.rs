//! Literals, clauses and CNF formulas.
mod clause;
mod dimacs;
mod lit;

pub use clause::{CRef, Clause, ClauseArena, ClauseHeader, ClauseKind, Tier};
pub use dimacs::{emit_dimacs, parse_dimacs, write_dimacs, ParseError};
pub use lit::{negate, LBool, Lit, Var};

/// A CNF formula as read from input: normalized clauses over `num_vars` variables.
///
/// Clauses are stored without duplicate literals and tautologies are dropped on insertion.
/// An empty input clause is not stored; it sets [`has_empty_clause`](Self::has_empty_clause).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula {
    num_vars: usize,
    declared_vars: usize,
    clauses: Vec<Vec<Lit>>,
    empty_clause: bool,
}

impl Formula {
    pub fn new(num_vars: usize) -> Formula {
        Formula {
            num_vars,
            declared_vars: num_vars,
            ..Formula::default()
        }
    }

    /// Build from signed DIMACS integers, one slice per clause.
    pub fn from_dimacs_clauses<C: AsRef<[i32]>>(num_vars: usize, clauses: &[C]) -> Formula {
        let mut f = Formula::new(num_vars);
        for c in clauses {
            let lits: Vec<Lit> = c.as_ref().iter().map(|&x| Lit::from_dimacs(x)).collect();
            f.add_clause(&lits);
        }
        f
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Variable count from the header, before any growth.
    pub fn declared_vars(&self) -> usize {
        self.declared_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn has_empty_clause(&self) -> bool {
        self.empty_clause
    }

    /// Literals of the unit clauses.
    pub fn units(&self) -> impl Iterator<Item = Lit> + '_ {
        self.clauses.iter().filter(|c| c.len() == 1).map(|c| c[0])
    }

    /// Make sure variables `1..=n` exist.
    pub fn reserve_vars(&mut self, n: usize) {
        self.num_vars = self.num_vars.max(n);
    }

    /// Normalize and add a clause. Returns `false` if it was dropped as a tautology.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        match normalize_clause(lits) {
            None => false,
            Some(c) if c.is_empty() => {
                self.empty_clause = true;
                true
            }
            Some(c) => {
                if let Some(max) = c.iter().map(|l| l.var().index() + 1).max() {
                    self.num_vars = self.num_vars.max(max);
                }
                self.clauses.push(c);
                true
            }
        }
    }

    /// Does `model` (indexed by variable) satisfy every clause?
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        !self.empty_clause
            && self.clauses.iter().all(|c| {
                c.iter()
                    .any(|l| model.get(l.var().index()).copied() == Some(l.is_positive()))
            })
    }
}

/// Remove duplicate literals (keeping first occurrences) and detect tautologies.
///
/// Returns `None` for a tautological clause.
pub fn normalize_clause(lits: &[Lit]) -> Option<Vec<Lit>> {
    let mut out: Vec<Lit> = Vec::with_capacity(lits.len());
    for &l in lits {
        if out.contains(&!l) {
            return None;
        }
        if !out.contains(&l) {
            out.push(l);
        }
    }
    Some(out)
}
