//! Independent oracles and instance generators shared by the integration tests.
//!
//! Nothing here uses the solver's own data structures: clauses are plain DIMACS integers.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vivisat::{Formula, Lit};

pub type Cnf = Vec<Vec<i32>>;

/// Uniform random k-SAT: `m` clauses of `k` distinct variables with random signs.
pub fn random_ksat(n: u32, m: usize, k: usize, seed: u64) -> Cnf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            let mut vars: Vec<i32> = Vec::with_capacity(k);
            while vars.len() < k {
                let v = rng.gen_range(1..=n as i32);
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            vars.into_iter()
                .map(|v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect()
}

pub fn random_3sat(n: u32, ratio: f64, seed: u64) -> Cnf {
    random_ksat(n, (n as f64 * ratio).round() as usize, 3, seed)
}

/// Pigeonhole principle: `holes + 1` pigeons into `holes` holes (unsatisfiable).
pub fn pigeonhole(holes: i32) -> (u32, Cnf) {
    let pigeons = holes + 1;
    let var = |p: i32, h: i32| p * holes + h + 1;
    let mut cnf = Vec::new();
    for p in 0..pigeons {
        cnf.push((0..holes).map(|h| var(p, h)).collect());
    }
    for h in 0..holes {
        for p in 0..pigeons {
            for q in p + 1..pigeons {
                cnf.push(vec![-var(p, h), -var(q, h)]);
            }
        }
    }
    ((pigeons * holes) as u32, cnf)
}

pub fn formula(n: u32, cnf: &Cnf) -> Formula {
    Formula::from_dimacs_clauses(n as usize, cnf)
}

pub fn satisfies(model: &[bool], cnf: &Cnf) -> bool {
    cnf.iter().all(|c| {
        c.iter()
            .any(|&x| model[(x.unsigned_abs() - 1) as usize] == (x > 0))
    })
}

/// All models of `cnf` over `n <= 24` variables, as bitmasks (bit `i` = variable `i + 1`).
pub fn all_models(n: u32, cnf: &Cnf) -> Vec<u32> {
    assert!(n <= 24);
    // each clause as (positive mask, negative mask)
    let masks: Vec<(u32, u32)> = cnf
        .iter()
        .map(|c| {
            let mut pos = 0u32;
            let mut neg = 0u32;
            for &x in c {
                let bit = 1u32 << (x.unsigned_abs() - 1);
                if x > 0 {
                    pos |= bit;
                } else {
                    neg |= bit;
                }
            }
            (pos, neg)
        })
        .collect();
    (0..(1u32 << n))
        .filter(|&a| masks.iter().all(|&(p, q)| a & p != 0 || !a & q != 0))
        .collect()
}

/// Is `clause` (solver literals) true in every model?
pub fn implied_by(models: &[u32], clause: &[Lit]) -> bool {
    let (mut pos, mut neg) = (0u32, 0u32);
    for l in clause {
        let bit = 1u32 << l.var().index();
        if l.is_positive() {
            pos |= bit;
        } else {
            neg |= bit;
        }
    }
    models.iter().all(|&a| a & pos != 0 || !a & neg != 0)
}

/// Is `clause` (DIMACS) true in every model?
pub fn implied_dimacs(models: &[u32], clause: &[i32]) -> bool {
    let lits: Vec<Lit> = clause.iter().map(|&x| Lit::from_dimacs(x)).collect();
    implied_by(models, &lits)
}

/// A small recursive DPLL with unit propagation. Returns a model if satisfiable.
pub fn dpll(n: u32, cnf: &Cnf) -> Option<Vec<bool>> {
    let mut assign: Vec<i8> = vec![0; n as usize + 1];
    if dpll_rec(cnf, &mut assign) {
        Some(assign[1..].iter().map(|&v| v > 0).collect())
    } else {
        None
    }
}

fn lit_value(assign: &[i8], x: i32) -> i8 {
    let v = assign[x.unsigned_abs() as usize];
    if x > 0 {
        v
    } else {
        -v
    }
}

fn dpll_rec(cnf: &Cnf, assign: &mut Vec<i8>) -> bool {
    let mut trail = Vec::new();
    // unit propagation to fixpoint
    loop {
        let mut changed = false;
        for c in cnf {
            let mut unassigned = None;
            let mut count = 0;
            let mut sat = false;
            for &x in c {
                match lit_value(assign, x) {
                    1 => {
                        sat = true;
                        break;
                    }
                    0 => {
                        count += 1;
                        unassigned = Some(x);
                    }
                    _ => {}
                }
            }
            if sat {
                continue;
            }
            match count {
                0 => {
                    for v in trail {
                        assign[v] = 0;
                    }
                    return false;
                }
                1 => {
                    let x = unassigned.unwrap();
                    assign[x.unsigned_abs() as usize] = if x > 0 { 1 } else { -1 };
                    trail.push(x.unsigned_abs() as usize);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let Some(v) = (1..assign.len()).find(|&v| assign[v] == 0) else {
        return true;
    };
    for val in [1i8, -1] {
        assign[v] = val;
        if dpll_rec(cnf, assign) {
            return true;
        }
    }
    assign[v] = 0;
    for v in trail {
        assign[v] = 0;
    }
    false
}

/// Naive unit propagation fixpoint: repeatedly scan all clauses. `None` on conflict.
pub fn naive_up(n: u32, cnf: &Cnf, assumptions: &[i32]) -> Option<BTreeSet<i32>> {
    let mut assign: Vec<i8> = vec![0; n as usize + 1];
    for &a in assumptions {
        match lit_value(&assign, a) {
            -1 => return None,
            0 => assign[a.unsigned_abs() as usize] = if a > 0 { 1 } else { -1 },
            _ => {}
        }
    }
    loop {
        let mut changed = false;
        for c in cnf {
            if c.iter().any(|&x| lit_value(&assign, x) == 1) {
                continue;
            }
            let free: Vec<i32> = c
                .iter()
                .copied()
                .filter(|&x| lit_value(&assign, x) == 0)
                .collect();
            match free.len() {
                0 => return None,
                1 => {
                    let x = free[0];
                    assign[x.unsigned_abs() as usize] = if x > 0 { 1 } else { -1 };
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    Some(
        (1..=n as i32)
            .filter_map(|v| match assign[v as usize] {
                1 => Some(v),
                -1 => Some(-v),
                _ => None,
            })
            .collect(),
    )
}

/// Is `sub` a sub-multiset of `sup`?
pub fn is_sub_multiset(sub: &[Lit], sup: &[Lit]) -> bool {
    let mut rest = sup.to_vec();
    for l in sub {
        match rest.iter().position(|x| x == l) {
            Some(i) => {
                rest.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

pub mod fig1 {
    //! The implication graph of the worked conflict-analysis example, over literals named
    //! `l1 .. l140`. Even names are positive literals of variable `a / 2`, odd names negative
    //! literals of variable `(a + 1) / 2`.
    use vivisat::Lit;

    pub const NUM_VARS: u32 = 70;

    pub fn l(a: i32) -> i32 {
        if a % 2 == 0 {
            a / 2
        } else {
            -(a + 1) / 2
        }
    }

    pub fn lit(a: i32) -> Lit {
        Lit::from_dimacs(l(a))
    }

    /// Clauses producing the graph when `l1`, `l8`, `l20`, `l30` are decided in that order.
    /// The last clause is the conflicting one.
    pub fn clauses() -> Vec<Vec<i32>> {
        let c = |xs: &[i32]| -> Vec<i32> {
            xs.iter()
                .map(|&x| if x > 0 { l(x) } else { -l(-x) })
                .collect()
        };
        vec![
            c(&[-1, 5]),
            c(&[-1, 16]),
            c(&[-8, 11]),
            c(&[-30, 45]),
            c(&[-45, -5, 58]),
            c(&[-45, 83]),
            c(&[-45, -11, 74]),
            c(&[-83, -16, -74, 72]),
            c(&[-72, 100]),
            c(&[-8, -58, -83, -100, 140]),
            c(&[-100, 62]),
            c(&[-140, -62]),
        ]
    }

    pub const DECISIONS: [i32; 4] = [1, 8, 20, 30];
}
