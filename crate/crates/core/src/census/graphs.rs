//! Labelled colored-graph counts: OBTF graphs, blue-bipartite graphs and
//! literal posets summed over graphs.

use crate::cgraph::{
    self, coloring_count, is_blue_bipartite, is_obtf, pair_count, pairs, ColoredGraph,
};
use crate::error::{Error, Result};
use crate::litposet;
use crate::par;

pub const FLAT_SWEEP_MAX: usize = 5;
pub const OBTF_DFS_MAX: usize = 7;
pub const CLOSED_FORM_MAX: usize = 7;
pub const ORIENTATION_SWEEP_MAX: usize = 5;

fn flat_sweep(n: usize, keep: impl Fn(&ColoredGraph) -> bool + Sync + Send) -> Result<u64> {
    if n > FLAT_SWEEP_MAX {
        return Err(Error::guard("flat coloring sweep", n, FLAT_SWEEP_MAX));
    }
    Ok(par::range_sum(coloring_count(n), |code| {
        keep(&ColoredGraph::from_code(n, code)) as u64
    }))
}

/// `F(n)` by testing every coloring.
pub fn obtf_flat(n: usize) -> Result<u64> {
    flat_sweep(n, is_obtf)
}

/// `F(n)` with a caller-supplied OBTF predicate (for harness mutation tests).
pub fn obtf_flat_with(n: usize, pred: fn(&ColoredGraph) -> bool) -> Result<u64> {
    flat_sweep(n, pred)
}

/// `|B(n)|` by testing every coloring.
pub fn bb_flat(n: usize) -> Result<u64> {
    flat_sweep(n, is_blue_bipartite)
}

/// Partial coloring during the pruned search; vertices `< 8`.
#[derive(Clone, Copy)]
struct Partial {
    adj: [u8; 8],
    blue: [u8; 8],
}

struct ObtfSearch {
    order: Vec<(usize, usize)>,
}

impl ObtfSearch {
    /// Colors allowed on `(i, j)` given the pairs before it: bit 0 red, bit 1 blue.
    /// Every triangle closed by `(i, j)` has its apex below `i`.
    #[inline]
    fn allowed(s: &Partial, i: usize, j: usize) -> (bool, bool) {
        let common = s.adj[i] & s.adj[j];
        let odd_apex = s.blue[i] ^ s.blue[j];
        (common & odd_apex == 0, common & !odd_apex == 0)
    }

    fn count_from(&self, s: &mut Partial, depth: usize) -> u64 {
        let (i, j) = self.order[depth];
        let (red_ok, blue_ok) = Self::allowed(s, i, j);
        if depth + 1 == self.order.len() {
            return 1 + red_ok as u64 + blue_ok as u64;
        }
        let mut total = self.count_from(s, depth + 1);
        let (bi, bj) = (1u8 << i, 1u8 << j);
        s.adj[i] |= bj;
        s.adj[j] |= bi;
        if red_ok {
            total += self.count_from(s, depth + 1);
        }
        if blue_ok {
            s.blue[i] |= bj;
            s.blue[j] |= bi;
            total += self.count_from(s, depth + 1);
            s.blue[i] &= !bj;
            s.blue[j] &= !bi;
        }
        s.adj[i] &= !bj;
        s.adj[j] &= !bi;
        total
    }

    /// Valid partial colorings of the first `depth` pairs, in branch order.
    fn prefixes(&self, depth: usize) -> Vec<Partial> {
        let mut level = vec![Partial {
            adj: [0; 8],
            blue: [0; 8],
        }];
        for &(i, j) in &self.order[..depth] {
            let mut next = Vec::with_capacity(level.len() * 3);
            for s in level {
                let (red_ok, blue_ok) = Self::allowed(&s, i, j);
                next.push(s);
                let mut with = s;
                with.adj[i] |= 1 << j;
                with.adj[j] |= 1 << i;
                if red_ok {
                    next.push(with);
                }
                if blue_ok {
                    with.blue[i] |= 1 << j;
                    with.blue[j] |= 1 << i;
                    next.push(with);
                }
            }
            level = next;
        }
        level
    }
}

/// `F(n)` by depth-first search over pairs in colex order, pruning as soon as
/// a completed triangle is odd-blue. Subtrees below a fixed prefix depth are
/// counted in parallel.
pub fn obtf_dfs(n: usize) -> Result<u64> {
    if n > OBTF_DFS_MAX {
        return Err(Error::guard("OBTF depth-first search", n, OBTF_DFS_MAX));
    }
    let search = ObtfSearch { order: pairs(n) };
    let total_pairs = search.order.len();
    if total_pairs == 0 {
        return Ok(1);
    }
    let depth = total_pairs.saturating_sub(1).min(10);
    let prefixes = search.prefixes(depth);
    if depth == total_pairs {
        return Ok(prefixes.len() as u64);
    }
    Ok(par::map_reduce(
        &prefixes,
        || 0u64,
        |s| search.count_from(&mut s.clone(), depth),
        |a, b| a + b,
    ))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Connected labelled graphs on `1..=n` vertices (index 0 unused), by the
/// usual recurrence on the component containing vertex 1.
pub fn connected_graph_counts(n: usize) -> Vec<u128> {
    let all = |m: usize| 1u128 << pair_count(m);
    let mut c = vec![0u128; n + 1];
    for m in 1..=n {
        let disconnected: u128 = (1..m)
            .map(|k| binomial(m - 1, k - 1) * c[k] * all(m - k))
            .sum();
        c[m] = all(m) - disconnected;
    }
    c
}

/// `|B(n)|` as the sum over uncolored graphs of `2^(n - components)`.
pub fn bb_closed_form(n: usize) -> Result<u64> {
    if n > CLOSED_FORM_MAX {
        return Err(Error::guard(
            "blue-bipartite closed form",
            n,
            CLOSED_FORM_MAX,
        ));
    }
    let connected = connected_graph_counts(n);
    // a connected component on k vertices admits 2^(k-1) colorings
    let weight: Vec<u128> = (0..=n)
        .map(|k| if k == 0 { 0 } else { connected[k] << (k - 1) })
        .collect();
    let mut total = vec![0u128; n + 1];
    total[0] = 1;
    for m in 1..=n {
        total[m] = (1..=m)
            .map(|k| binomial(m - 1, k - 1) * weight[k] * total[m - k])
            .sum();
    }
    u64::try_from(total[n]).map_err(|_| Error::Invariant("B(n) overflows u64".into()))
}

/// `|P(n)|` as the sum of `|P(G)|` over all colorings.
pub fn pn_orientation_sweep(n: usize) -> Result<u64> {
    if n > ORIENTATION_SWEEP_MAX {
        return Err(Error::guard(
            "orientation sweep over graphs",
            n,
            ORIENTATION_SWEEP_MAX,
        ));
    }
    Ok(par::range_sum(coloring_count(n), |code| {
        cgraph::count_posets_of_graph(&ColoredGraph::from_code(n, code))
            .expect("graphs on at most 5 vertices have at most 10 edges")
    }))
}

pub fn pn_relation_sweep(n: usize) -> Result<u64> {
    Ok(litposet::enumerate_pn_by_relation_sweep(n)?.len() as u64)
}
