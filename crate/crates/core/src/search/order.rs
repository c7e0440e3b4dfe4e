//! VSIDS variable ordering with phase saving.
//!
//! Activities are bumped by a growing increment instead of decaying every score, and rescaled
//! when they get too large. Unassigned variables are kept in a binary max-heap; assigned ones are
//! removed lazily when they surface at the top. Equal activities are ordered by variable index.
use crate::formula::{Lit, Var};

const RESCALE_LIMIT: f64 = 1e100;

#[derive(Debug, Clone)]
pub struct VarOrder {
    activity: Vec<f64>,
    increment: f64,
    decay: f64,
    heap: Vec<Var>,
    /// Position of each variable in `heap`, `usize::MAX` if absent.
    position: Vec<usize>,
    phase: Vec<Option<bool>>,
    phase_saving: bool,
}

impl VarOrder {
    pub fn new(num_vars: usize, decay: f64, phase_saving: bool) -> VarOrder {
        let mut order = VarOrder {
            activity: Vec::new(),
            increment: 1.0,
            decay,
            heap: Vec::new(),
            position: Vec::new(),
            phase: Vec::new(),
            phase_saving,
        };
        order.grow(num_vars);
        order
    }

    pub fn grow(&mut self, num_vars: usize) {
        for v in self.activity.len()..num_vars {
            self.activity.push(0.0);
            self.position.push(usize::MAX);
            self.phase.push(None);
            self.insert(Var::new(v as u32));
        }
    }

    pub fn activity(&self, var: Var) -> f64 {
        self.activity[var.index()]
    }

    pub fn set_activity(&mut self, var: Var, value: f64) {
        self.activity[var.index()] = value;
        if self.contains(var) {
            let pos = self.position[var.index()];
            self.sift_up(pos);
            let pos = self.position[var.index()];
            self.sift_down(pos);
        }
    }

    pub fn saved_phase(&self, var: Var) -> Option<bool> {
        self.phase[var.index()]
    }

    pub fn set_phase(&mut self, var: Var, positive: bool) {
        self.phase[var.index()] = Some(positive);
    }

    pub fn decay_factor(&self) -> f64 {
        self.decay
    }

    pub fn set_decay(&mut self, decay: f64) {
        self.decay = decay;
    }

    pub fn bump(&mut self, var: Var) {
        let a = &mut self.activity[var.index()];
        *a += self.increment;
        if *a > RESCALE_LIMIT {
            for act in self.activity.iter_mut() {
                *act *= 1.0 / RESCALE_LIMIT;
            }
            self.increment *= 1.0 / RESCALE_LIMIT;
        }
        if self.contains(var) {
            let pos = self.position[var.index()];
            self.sift_up(pos);
        }
    }

    pub fn decay(&mut self) {
        self.increment /= self.decay;
    }

    /// Re-insert a variable that became unassigned, saving its phase.
    pub fn on_unassign(&mut self, lit: Lit, save_phase: bool) {
        if save_phase && self.phase_saving {
            self.phase[lit.var().index()] = Some(lit.is_positive());
        }
        self.insert(lit.var());
    }

    /// Pop the unassigned variable with highest activity (lowest index on ties), returned as
    /// a literal in its saved phase (negative by default).
    pub fn pick(&mut self, is_assigned: impl Fn(Var) -> bool) -> Option<Lit> {
        while let Some(&top) = self.heap.first() {
            self.remove_top();
            if !is_assigned(top) {
                let positive = if self.phase_saving {
                    self.phase[top.index()].unwrap_or(false)
                } else {
                    false
                };
                return Some(top.lit(positive));
            }
        }
        None
    }

    fn contains(&self, var: Var) -> bool {
        self.position[var.index()] != usize::MAX
    }

    fn insert(&mut self, var: Var) {
        if self.contains(var) {
            return;
        }
        let pos = self.heap.len();
        self.heap.push(var);
        self.position[var.index()] = pos;
        self.sift_up(pos);
    }

    fn remove_top(&mut self) {
        let top = self.heap.swap_remove(0);
        self.position[top.index()] = usize::MAX;
        if !self.heap.is_empty() {
            self.position[self.heap[0].index()] = 0;
            self.sift_down(0);
        }
    }

    #[inline]
    fn before(&self, a: Var, b: Var) -> bool {
        let (x, y) = (self.activity[a.index()], self.activity[b.index()]);
        x > y || (x == y && a < b)
    }

    fn sift_up(&mut self, mut pos: usize) {
        let var = self.heap[pos];
        while pos > 0 {
            let parent = (pos - 1) / 2;
            let p = self.heap[parent];
            if !self.before(var, p) {
                break;
            }
            self.heap[pos] = p;
            self.position[p.index()] = pos;
            pos = parent;
        }
        self.heap[pos] = var;
        self.position[var.index()] = pos;
    }

    fn sift_down(&mut self, mut pos: usize) {
        let var = self.heap[pos];
        let len = self.heap.len();
        loop {
            let left = 2 * pos + 1;
            if left >= len {
                break;
            }
            let right = left + 1;
            let child = if right < len && self.before(self.heap[right], self.heap[left]) {
                right
            } else {
                left
            };
            let c = self.heap[child];
            if !self.before(c, var) {
                break;
            }
            self.heap[pos] = c;
            self.position[c.index()] = pos;
            pos = child;
        }
        self.heap[pos] = var;
        self.position[var.index()] = pos;
    }
}
