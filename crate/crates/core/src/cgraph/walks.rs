use super::ColoredGraph;
use crate::error::{Error, Result};

pub const WALK_MAX_LEN: usize = 5;

/// First non-simple closed walk of length at most 5 with an odd number of
/// blue edge traversals, as its vertex sequence (start repeated at the end).
pub fn odd_blue_closed_walk(g: &ColoredGraph) -> Option<Vec<usize>> {
    let mut walk = Vec::with_capacity(WALK_MAX_LEN + 1);
    for start in 0..g.n() {
        walk.clear();
        walk.push(start);
        if let Some(w) = extend(g, &mut walk, 0) {
            return Some(w);
        }
    }
    None
}

fn extend(g: &ColoredGraph, walk: &mut Vec<usize>, blues: usize) -> Option<Vec<usize>> {
    let last = *walk.last().unwrap();
    let len = walk.len() - 1;
    // a closed walk may also continue through its start
    if len >= 2 && last == walk[0] && blues % 2 == 1 && !is_simple(walk) {
        return Some(walk.clone());
    }
    if len == WALK_MAX_LEN {
        return None;
    }
    for next in crate::litposet::bits(g.neighbors(last)) {
        walk.push(next);
        let found = extend(g, walk, blues + g.is_blue(last, next) as usize);
        walk.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// A closed walk is simple when it repeats no vertex and no edge.
fn is_simple(walk: &[usize]) -> bool {
    let body = &walk[..walk.len() - 1];
    let distinct_vertices = body.iter().enumerate().all(|(k, v)| !body[..k].contains(v));
    let edges: Vec<(usize, usize)> = walk
        .windows(2)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect();
    let distinct_edges = edges
        .iter()
        .enumerate()
        .all(|(k, e)| !edges[..k].contains(e));
    distinct_vertices && distinct_edges
}

/// Every non-simple closed walk of length at most 5 is even-blue. Defined for
/// OBTF graphs only.
pub fn check_closed_walks(g: &ColoredGraph) -> Result<bool> {
    if !super::is_obtf(g) {
        return Err(Error::Precondition(
            "closed-walk check requires an OBTF graph",
        ));
    }
    Ok(odd_blue_closed_walk(g).is_none())
}

#[cfg(test)]
mod tests {
    use super::super::{Color::*, *};
    use super::*;

    // All closed walks of length <= 5 by brute force over vertex sequences.
    fn walks_oracle(g: &ColoredGraph) -> Vec<(Vec<usize>, usize)> {
        let n = g.n();
        let mut out = Vec::new();
        for len in 2..=WALK_MAX_LEN {
            let total = n.pow(len as u32);
            for code in 0..total {
                let mut seq: Vec<usize> = (0..len).map(|k| code / n.pow(k as u32) % n).collect();
                seq.push(seq[0]);
                if seq
                    .windows(2)
                    .all(|w| g.color(w[0], w[1]).is_some() && w[0] != w[1])
                {
                    let blues = seq.windows(2).filter(|w| g.is_blue(w[0], w[1])).count();
                    out.push((seq, blues));
                }
            }
        }
        out
    }

    #[test]
    fn back_and_forth_is_even() {
        let g = ColoredGraph::from_edges(2, [(0, 1, Blue)]).unwrap();
        assert!(check_closed_walks(&g).unwrap());
    }

    #[test]
    fn triangle_with_repeated_edge() {
        let g = ColoredGraph::from_edges(3, [(0, 1, Blue), (1, 2, Blue), (0, 2, Red)]).unwrap();
        let walk = [0, 1, 2, 0, 1, 0];
        assert!(!is_simple(&walk));
        let blues = walk.windows(2).filter(|w| g.is_blue(w[0], w[1])).count();
        assert_eq!(blues % 2, 0);
        assert!(check_closed_walks(&g).unwrap());
    }

    #[test]
    fn empty_graph_and_precondition() {
        assert!(check_closed_walks(&ColoredGraph::new(4).unwrap()).unwrap());
        let odd = ColoredGraph::from_edges(3, [(0, 1, Red), (1, 2, Red), (0, 2, Blue)]).unwrap();
        assert!(check_closed_walks(&odd).is_err());
        // the odd triangle itself is simple, but going round it and back along an edge is not
        let w = odd_blue_closed_walk(&odd).unwrap();
        assert!(!is_simple(&w));
    }

    #[test]
    fn search_matches_sequence_oracle() {
        for g in all_colorings(4) {
            let oracle_odd = walks_oracle(&g)
                .into_iter()
                .any(|(w, b)| b % 2 == 1 && !is_simple(&w));
            assert_eq!(odd_blue_closed_walk(&g).is_some(), oracle_odd, "{g:?}");
        }
    }
}
