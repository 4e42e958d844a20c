//! Counting distinct 2-SAT functions and elementary ones.

use crate::boolfn::{all_clauses, full_mask, is_elementary, TruthTable};
use crate::error::{Error, Result};
use crate::par;

pub const FORMULA_SWEEP_MAX: usize = 4;
pub const CLOSURE_ENUM_MAX: usize = 5;

/// Function and elementary-function counts under both conventions.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct FunctionTally {
    /// Tables of formulas with at least one clause.
    pub functions_t1: u64,
    /// Tables of all formulas, the empty one included.
    pub functions_t0: u64,
    pub elementary_t1: u64,
    pub elementary_t0: u64,
}

impl FunctionTally {
    fn add(self, o: Self) -> Self {
        FunctionTally {
            functions_t1: self.functions_t1 + o.functions_t1,
            functions_t0: self.functions_t0 + o.functions_t0,
            elementary_t1: self.elementary_t1 + o.elementary_t1,
            elementary_t0: self.elementary_t0 + o.elementary_t0,
        }
    }

    fn count(&mut self, t: TruthTable, by_nonempty: bool, by_any: bool) {
        let elementary = is_elementary(t) as u64;
        if by_nonempty {
            self.functions_t1 += 1;
            self.elementary_t1 += elementary;
        }
        if by_any {
            self.functions_t0 += 1;
            self.elementary_t0 += elementary;
        }
    }
}

/// Tables reached by nonempty clause subsets, as a bitset indexed by table bits.
pub fn nonempty_formula_tables(n: usize) -> Result<Vec<u64>> {
    if n > FORMULA_SWEEP_MAX {
        return Err(Error::guard("formula sweep", n, FORMULA_SWEEP_MAX));
    }
    let masks: Vec<u64> = all_clauses(n).iter().map(|c| c.mask(n)).collect();
    let words = ((full_mask(n) as usize + 1) / 64).max(1);
    let prefix = masks.len().min(8);
    let (head, tail) = masks.split_at(prefix);

    fn sweep(tail: &[u64], table: u64, nonempty: bool, seen: &mut [u64]) {
        match tail.split_first() {
            None => {
                if nonempty {
                    seen[(table >> 6) as usize] |= 1 << (table & 63);
                }
            }
            Some((&m, rest)) => {
                sweep(rest, table, nonempty, seen);
                sweep(rest, table & m, true, seen);
            }
        }
    }

    let seen = par::range_reduce(
        1u64 << prefix,
        || vec![0u64; words],
        |sel| {
            let mut seen = vec![0u64; words];
            let table = head
                .iter()
                .enumerate()
                .filter(|(k, _)| sel >> k & 1 == 1)
                .fold(full_mask(n), |t, (_, &m)| t & m);
            sweep(tail, table, sel != 0, &mut seen);
            seen
        },
        |mut a, b| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x |= y);
            a
        },
    );
    Ok(seen)
}

/// Deduplicates the truth tables of every clause subset.
pub fn formula_sweep(n: usize) -> Result<FunctionTally> {
    let seen = nonempty_formula_tables(n)?;
    let full = full_mask(n);
    let mut tally = FunctionTally::default();
    for (w, &word) in seen.iter().enumerate() {
        for b in crate::census::bits64(word) {
            let bits = (w * 64 + b) as u64;
            if bits > full {
                break;
            }
            let t = TruthTable::new(n, bits)?;
            tally.count(t, true, true);
        }
    }
    let full_by_clauses = seen[(full >> 6) as usize] >> (full & 63) & 1 == 1;
    if !full_by_clauses {
        // the empty formula contributes constant True
        tally.count(TruthTable::full(n), false, true);
    }
    Ok(tally)
}

/// Assignment sets closed under "satisfy every clause that all members satisfy".
struct ClauseClosure {
    n: usize,
    masks: Vec<u64>,
    universe: usize,
}

impl ClauseClosure {
    fn new(n: usize) -> Self {
        ClauseClosure {
            n,
            masks: all_clauses(n).iter().map(|c| c.mask(n)).collect(),
            universe: 1 << n,
        }
    }

    fn close(&self, s: u64) -> u64 {
        self.masks
            .iter()
            .filter(|&&m| s & !m == 0)
            .fold(full_mask(self.n), |acc, &m| acc & m)
    }

    fn record(&self, s: u64, tally: &mut FunctionTally) {
        let t = TruthTable::new(self.n, s).expect("closed sets stay inside the universe");
        let full = t.is_full();
        // constant True needs the empty formula; below two variables nothing else exists
        tally.count(t, self.n >= 2 && !full, self.n >= 2 || full);
    }

    /// Close-by-one: children of closed `a` add an element `i >= from` and are
    /// kept only if the closure adds nothing below `i`.
    fn children(&self, a: u64, from: usize) -> Vec<(u64, usize)> {
        (from..self.universe)
            .filter(|&i| a >> i & 1 == 0)
            .filter_map(|i| {
                let b = self.close(a | 1 << i);
                let below = (1u64 << i) - 1;
                (b & below == a & below).then_some((b, i + 1))
            })
            .collect()
    }

    fn descend(&self, a: u64, from: usize, tally: &mut FunctionTally) {
        self.record(a, tally);
        for (b, next) in self.children(a, from) {
            self.descend(b, next, tally);
        }
    }
}

/// Counts closed sets of the clause-closure, which are exactly the
/// median-closed sets for `n >= 2`.
pub fn closure_enum(n: usize) -> Result<FunctionTally> {
    if n > CLOSURE_ENUM_MAX {
        return Err(Error::guard("closure enumeration", n, CLOSURE_ENUM_MAX));
    }
    let cc = ClauseClosure::new(n);
    let mut tally = FunctionTally::default();
    // expand two levels sequentially, then fan out
    let root = cc.close(0);
    cc.record(root, &mut tally);
    let mut tasks = Vec::new();
    for (b, next) in cc.children(root, 0) {
        cc.record(b, &mut tally);
        tasks.extend(cc.children(b, next));
    }
    let rest = par::map_reduce(
        &tasks,
        FunctionTally::default,
        |&(a, from)| {
            let mut t = FunctionTally::default();
            cc.descend(a, from, &mut t);
            t
        },
        FunctionTally::add,
    );
    Ok(tally.add(rest))
}

/// Closed sets of the clause-closure, in close-by-one order (small `n` only).
pub fn closed_sets(n: usize) -> Result<Vec<u64>> {
    if n > 4 {
        return Err(Error::guard("closed set listing", n, 4));
    }
    let cc = ClauseClosure::new(n);
    let mut out = Vec::new();
    fn walk(cc: &ClauseClosure, a: u64, from: usize, out: &mut Vec<u64>) {
        out.push(a);
        for (b, next) in cc.children(a, from) {
            walk(cc, b, next, out);
        }
    }
    walk(&cc, cc.close(0), 0, &mut out);
    Ok(out)
}
