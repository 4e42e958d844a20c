//! How many posets on `m` labelled points share one cover graph.

use std::collections::HashMap;

use crate::cgraph::{pair_index, pairs};
use crate::error::{Error, Result};

pub const COVER_MULTIPLICITY_MAX: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CoverMultiplicity {
    pub m: usize,
    /// Largest number of posets sharing one cover graph.
    pub max: u64,
    /// A cover graph attaining `max` (the first in colex-bitmask order).
    pub witness: Vec<(usize, usize)>,
    pub posets: u64,
    pub cover_graphs: u64,
}

/// Strict orders on `m` points, each visited as its `less` rows.
///
/// Pairs are decided in colex order as `<`, `>` or incomparable; a triple is
/// checked for transitivity the moment its last pair is decided.
pub fn for_each_poset(m: usize, mut visit: impl FnMut(&[u8])) -> Result<()> {
    if m > COVER_MULTIPLICITY_MAX {
        return Err(Error::guard("poset enumeration", m, COVER_MULTIPLICITY_MAX));
    }
    let order = pairs(m);
    let mut less = [0u8; COVER_MULTIPLICITY_MAX];

    fn consistent(less: &[u8], i: usize, j: usize) -> bool {
        // triples {k, i, j} with k < i are complete once (i, j) is decided
        (0..i).all(|k| {
            let lt = |a: usize, b: usize| less[a] >> b & 1 == 1;
            let trans = |a: usize, b: usize, c: usize| !(lt(a, b) && lt(b, c)) || lt(a, c);
            let t = [k, i, j];
            (0..3).all(|x| {
                (0..3)
                    .all(|y| (0..3).all(|z| x == y || y == z || x == z || trans(t[x], t[y], t[z])))
            })
        })
    }

    fn go(order: &[(usize, usize)], less: &mut [u8], depth: usize, visit: &mut dyn FnMut(&[u8])) {
        let Some(&(i, j)) = order.get(depth) else {
            visit(less);
            return;
        };
        if consistent(less, i, j) {
            go(order, less, depth + 1, visit);
        }
        for (a, b) in [(i, j), (j, i)] {
            less[a] |= 1 << b;
            if consistent(less, i, j) {
                go(order, less, depth + 1, visit);
            }
            less[a] &= !(1 << b);
        }
    }

    go(&order, &mut less[..m], 0, &mut visit);
    Ok(())
}

/// Cover graph of a strict order as a bitmask over colex pair indices.
fn cover_mask(less: &[u8]) -> u32 {
    let mut mask = 0u32;
    for (a, &row) in less.iter().enumerate() {
        let beyond = (0..less.len())
            .filter(|&b| row >> b & 1 == 1)
            .fold(0u8, |acc, b| acc | less[b]);
        let covers = row & !beyond;
        for b in 0..less.len() {
            if covers >> b & 1 == 1 {
                mask |= 1 << pair_index(a, b);
            }
        }
    }
    mask
}

pub fn posets_per_cover_graph(m: usize) -> Result<CoverMultiplicity> {
    let mut groups: HashMap<u32, u64> = HashMap::new();
    let mut posets = 0u64;
    for_each_poset(m, |less| {
        posets += 1;
        *groups.entry(cover_mask(less)).or_default() += 1;
    })?;
    let (&mask, &max) = groups
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .expect("the antichain always exists");
    let witness = pairs(m)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, p)| p)
        .collect();
    Ok(CoverMultiplicity {
        m,
        max,
        witness,
        posets,
        cover_graphs: groups.len() as u64,
    })
}
