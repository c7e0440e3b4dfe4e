//! Clause storage.
//!
//! Clauses live in an arena and are addressed by [`CRef`]. A reference stays valid until the
//! clause is deleted; deleted slots are only recycled after [`ClauseArena::reclaim`], which the
//! solver calls once no watch list or reason can still point at them.
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::lit::Lit;

/// Reference to a clause in a [`ClauseArena`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CRef(u32);

impl CRef {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Quality tier of a clause.
///
/// Learnt clauses are `Core`, `Tier2` or `Local` depending on their LBD; input clauses are
/// always `Original`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Tier {
    Core,
    Tier2,
    Local,
    Original,
}

/// Kind of a clause for statistics purposes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ClauseKind {
    Original,
    Learnt,
}

/// Per-clause metadata.
#[derive(Clone, Debug)]
pub struct ClauseHeader {
    pub learnt: bool,
    /// Literal block distance; never exceeds the clause size.
    pub lbd: u32,
    pub tier: Tier,
    pub activity: f64,
    pub vivified_once: bool,
    /// Number of strict LBD decreases since the clause was last vivified.
    pub lbd_decreases_since_vivify: u32,
    /// LBD the clause had when it was last vivified (0 if never vivified).
    pub lbd_at_vivify: u32,
    /// Used to derive a learnt clause with LBD at most the usefulness bound since the last
    /// vivification pass.
    pub used_in_useful_conflict: bool,
    /// Conflict counter at the last time the clause took part in conflict analysis.
    pub last_touch: u64,
    pub lbd_ever_recomputed: bool,
    pub lbd_ever_decreased: bool,
    deleted: bool,
}

impl ClauseHeader {
    /// Header for an input clause: its LBD starts at its size.
    pub fn original(size: usize) -> ClauseHeader {
        ClauseHeader {
            learnt: false,
            lbd: size.max(1) as u32,
            tier: Tier::Original,
            activity: 0.0,
            vivified_once: false,
            lbd_decreases_since_vivify: 0,
            lbd_at_vivify: 0,
            used_in_useful_conflict: false,
            last_touch: 0,
            lbd_ever_recomputed: false,
            lbd_ever_decreased: false,
            deleted: false,
        }
    }

    pub fn learnt(lbd: u32, tier: Tier, touch: u64) -> ClauseHeader {
        ClauseHeader {
            learnt: true,
            lbd,
            tier,
            last_touch: touch,
            ..ClauseHeader::original(lbd as usize)
        }
    }

    pub fn kind(&self) -> ClauseKind {
        if self.learnt {
            ClauseKind::Learnt
        } else {
            ClauseKind::Original
        }
    }

    #[inline]
    pub fn is_deleted(&self) -> bool {
        self.deleted
    }
}

#[derive(Clone, Debug)]
pub struct Clause {
    lits: Vec<Lit>,
    pub header: ClauseHeader,
}

impl Clause {
    #[inline]
    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    #[inline]
    pub fn lits_mut(&mut self) -> &mut [Lit] {
        &mut self.lits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// Replace the literals, keeping the LBD within the new size.
    pub fn replace_lits(&mut self, lits: Vec<Lit>) {
        assert!(!lits.is_empty(), "stored clauses are never empty");
        self.lits = lits;
        let size = self.lits.len() as u32;
        if self.header.lbd > size {
            self.header.lbd = size;
        }
    }

    #[inline]
    pub fn is_deleted(&self) -> bool {
        self.header.deleted
    }
}

/// Arena of clauses with stable references and lazy deletion.
#[derive(Default, Debug)]
pub struct ClauseArena {
    slots: Vec<Clause>,
    free: Vec<CRef>,
    pending: Vec<CRef>,
    live: usize,
}

impl ClauseArena {
    pub fn new() -> ClauseArena {
        ClauseArena::default()
    }

    pub fn alloc(&mut self, lits: Vec<Lit>, header: ClauseHeader) -> CRef {
        assert!(!lits.is_empty(), "stored clauses are never empty");
        debug_assert!(header.lbd as usize <= lits.len());
        self.live += 1;
        let clause = Clause { lits, header };
        if let Some(cref) = self.free.pop() {
            self.slots[cref.index()] = clause;
            cref
        } else {
            let cref = CRef(self.slots.len() as u32);
            self.slots.push(clause);
            cref
        }
    }

    /// Mark a clause deleted. Its slot is recycled after the next [`reclaim`](Self::reclaim).
    pub fn delete(&mut self, cref: CRef) {
        let clause = &mut self.slots[cref.index()];
        assert!(!clause.header.deleted, "double delete of {cref:?}");
        clause.header.deleted = true;
        clause.lits = Vec::new();
        self.live -= 1;
        self.pending.push(cref);
    }

    /// Make the slots of deleted clauses available again. The caller guarantees that no
    /// reference to a deleted clause survives.
    pub fn reclaim(&mut self) {
        self.free.append(&mut self.pending);
    }

    /// Has the clause behind `cref` been deleted? Safe to call on any reference ever returned.
    #[inline]
    pub fn is_deleted(&self, cref: CRef) -> bool {
        self.slots[cref.index()].header.deleted
    }

    /// Number of slots, live or not. Every [`CRef`] index is below this.
    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    /// Number of live clauses.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Live clause references in arena order.
    pub fn iter_refs(&self) -> impl Iterator<Item = CRef> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.header.deleted)
            .map(|(i, _)| CRef(i as u32))
    }
}

impl Index<CRef> for ClauseArena {
    type Output = Clause;

    #[inline]
    fn index(&self, cref: CRef) -> &Clause {
        let c = &self.slots[cref.index()];
        debug_assert!(!c.header.deleted, "dereferenced deleted clause {cref:?}");
        c
    }
}

impl IndexMut<CRef> for ClauseArena {
    #[inline]
    fn index_mut(&mut self, cref: CRef) -> &mut Clause {
        let c = &mut self.slots[cref.index()];
        debug_assert!(!c.header.deleted, "dereferenced deleted clause {cref:?}");
        c
    }
}
