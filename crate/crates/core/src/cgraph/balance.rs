//! Blue-bipartiteness (balance of the signed graph whose negative edges are
//! the blue ones) and the vertex/edge deletion distances to it.

use itertools::Itertools;

use super::ColoredGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    U,
    W,
}

/// A vertex partition with every blue edge crossing and every red edge inside a side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn part(&self, s: Side) -> Vec<usize> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == s)
            .collect()
    }

    pub fn witnesses(&self, g: &ColoredGraph) -> bool {
        self.side.len() == g.n()
            && g.edges()
                .iter()
                .all(|&(i, j, _)| (self.side[i] != self.side[j]) == g.is_blue(i, j))
    }
}

/// Parity propagation per connected component; the lowest vertex of each
/// component goes to `U`.
pub fn find_blue_bipartition(g: &ColoredGraph) -> Option<Bipartition> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut stack = Vec::with_capacity(n);
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        stack.push(root);
        while let Some(v) = stack.pop() {
            let sv = side[v].unwrap();
            for u in crate::litposet::bits(g.neighbors(v)) {
                let want = sv ^ g.is_blue(u, v);
                match side[u] {
                    None => {
                        side[u] = Some(want);
                        stack.push(u);
                    }
                    Some(s) if s != want => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(Bipartition {
        side: side
            .into_iter()
            .map(|s| if s == Some(true) { Side::W } else { Side::U })
            .collect(),
    })
}

/// Balance test without building the witness.
pub fn is_blue_bipartite(g: &ColoredGraph) -> bool {
    let n = g.n();
    let mut side = [0u8; super::MAX_VERTICES]; // 0 unset, 1 U, 2 W
    let mut stack = [0u8; super::MAX_VERTICES];
    for root in 0..n {
        if side[root] != 0 {
            continue;
        }
        side[root] = 1;
        let mut top = 1;
        stack[0] = root as u8;
        while top > 0 {
            top -= 1;
            let v = stack[top] as usize;
            let (mut nb, blue) = (g.neighbors(v), g.blue_neighbors(v));
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                let want = if blue >> u & 1 == 1 {
                    3 - side[v]
                } else {
                    side[v]
                };
                if side[u] == 0 {
                    side[u] = want;
                    stack[top] = u as u8;
                    top += 1;
                } else if side[u] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// Tries all `2^n` side assignments; the first vertex is pinned to `U`.
pub fn bipartition_by_sweep(g: &ColoredGraph) -> Option<Bipartition> {
    let n = g.n();
    let edges = g.edges();
    (0u32..1 << n.saturating_sub(1)).find_map(|mask| {
        let side: Vec<Side> = (0..n)
            .map(|v| {
                if v > 0 && mask >> (v - 1) & 1 == 1 {
                    Side::W
                } else {
                    Side::U
                }
            })
            .collect();
        edges
            .iter()
            .all(|&(i, j, _)| (side[i] != side[j]) == g.is_blue(i, j))
            .then_some(Bipartition { side })
    })
}

pub const KAPPA_MAX_VERTICES: usize = 12;
pub const GAMMA_MAX_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct VertexDeletion {
    pub size: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct EdgeDeletion {
    pub size: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Fewest vertices whose removal leaves a blue-bipartite graph, with the
/// lexicographically first minimizer.
pub fn kappa(g: &ColoredGraph) -> Result<VertexDeletion> {
    let n = g.n();
    if n > KAPPA_MAX_VERTICES {
        return Err(Error::guard("kappa", n, KAPPA_MAX_VERTICES));
    }
    for k in 0..=n {
        for ks in (0..n).combinations(k) {
            let mask = ks.iter().fold(0u16, |m, &v| m | 1 << v);
            if is_blue_bipartite(&g.without_vertices(mask)) {
                return Ok(VertexDeletion {
                    size: k,
                    vertices: ks,
                });
            }
        }
    }
    unreachable!("deleting every vertex leaves an empty graph")
}

/// Fewest edges whose removal leaves a blue-bipartite graph (the frustration
/// index), with the first minimizer in colex combination order.
pub fn gamma(g: &ColoredGraph) -> Result<EdgeDeletion> {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(i, j, _)| (i, j)).collect();
    if edges.len() > GAMMA_MAX_EDGES {
        return Err(Error::guard(
            "gamma edge count",
            edges.len(),
            GAMMA_MAX_EDGES,
        ));
    }
    for k in 0..=edges.len() {
        for es in edges.iter().copied().combinations(k) {
            if is_blue_bipartite(&g.without_edges(&es)) {
                return Ok(EdgeDeletion { size: k, edges: es });
            }
        }
    }
    unreachable!("the edgeless graph is blue-bipartite")
}
