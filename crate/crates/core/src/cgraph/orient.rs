//! Between literal posets and colored graphs: the graph of a poset, the
//! literal double cover of a graph, and the posets whose graph is a given one.

use super::{is_obtf, Color, ColoredGraph};
use crate::boolfn::Literal;
use crate::error::{Error, Result};
use crate::litposet::{self, CoverGraph, LiteralPoset, Relation};

/// Largest edge count for the `2^|E|` orientation sweep.
pub const ORIENT_MAX_EDGES: usize = 20;

/// Red edge for a cover between literals of opposite sign, blue for equal sign.
/// The result is checked to be OBTF.
pub fn graph_of_poset(p: &LiteralPoset) -> Result<ColoredGraph> {
    let g = cover_coloring(p)?;
    if !is_obtf(&g) {
        return Err(Error::Invariant(format!(
            "graph of a poset has an odd-blue triangle: {g:?}"
        )));
    }
    Ok(g)
}

/// [`graph_of_poset`] without the OBTF check; fails only on a color conflict.
pub fn cover_coloring(p: &LiteralPoset) -> Result<ColoredGraph> {
    let mut g = ColoredGraph::new(p.n())?;
    for (u, v) in p.covers() {
        let (i, j) = (u.var(), v.var());
        let color = if u.is_negative() == v.is_negative() {
            Color::Blue
        } else {
            Color::Red
        };
        match g.color(i, j) {
            Some(c) if c != color => return Err(Error::ColorConflict(i.min(j), i.max(j))),
            _ => g.set(i, j, Some(color)),
        }
    }
    Ok(g)
}

/// The literal graph: `x_i x_j` and `~x_i ~x_j` per blue edge, `x_i ~x_j` and
/// `~x_i x_j` per red edge.
pub fn double_cover(g: &ColoredGraph) -> CoverGraph {
    let mut c = CoverGraph::empty(g.n());
    for (i, j, color) in g.edges() {
        let (a, b) = representative(i, j, color);
        c.add_edge(a, b);
        c.add_edge(a.negate(), b.negate());
    }
    c
}

fn representative(i: usize, j: usize, color: Color) -> (Literal, Literal) {
    match color {
        Color::Blue => (Literal::pos(i), Literal::pos(j)),
        Color::Red => (Literal::pos(i), Literal::neg(j)),
    }
}

struct Sweep {
    base: Relation,
    seeds: Vec<(usize, usize)>,
    cover_adj: Vec<u16>,
}

impl Sweep {
    fn new(g: &ColoredGraph) -> Result<Self> {
        let edges = g.edges();
        if edges.len() > ORIENT_MAX_EDGES {
            return Err(Error::guard(
                "orientation sweep edge count",
                edges.len(),
                ORIENT_MAX_EDGES,
            ));
        }
        if g.n() > litposet::MAX_VARS {
            return Err(Error::guard(
                "orientation sweep vertices",
                g.n(),
                litposet::MAX_VARS,
            ));
        }
        let seeds = edges
            .iter()
            .map(|&(i, j, c)| {
                let (a, b) = representative(i, j, c);
                (a.index(), b.index())
            })
            .collect();
        let cover = double_cover(g);
        let mut cover_adj = vec![0u16; 2 * g.n()];
        for (u, v) in cover.edges() {
            cover_adj[u.index()] |= 1 << v.index();
            cover_adj[v.index()] |= 1 << u.index();
        }
        Ok(Sweep {
            base: Relation::empty(g.n())?,
            seeds,
            cover_adj,
        })
    }

    fn orientations(&self) -> u64 {
        1 << self.seeds.len()
    }

    /// Bit `k` of `mask` reverses the `k`-th edge's representative.
    fn candidate(&self, mask: u64) -> Option<LiteralPoset> {
        let mut r = self.base;
        for (k, &(a, b)) in self.seeds.iter().enumerate() {
            if mask >> k & 1 == 0 {
                r.insert_dual(a, b);
            } else {
                r.insert_dual(b, a);
            }
        }
        let r = r.transitive_closure();
        if !r.is_irreflexive() || !r.negations_incomparable() {
            return None;
        }
        let p = LiteralPoset::from_valid(r);
        // every edge of the double cover must survive as a cover
        let mut covers = vec![0u16; self.cover_adj.len()];
        for (u, v) in p.covers() {
            covers[u.index()] |= 1 << v.index();
            covers[v.index()] |= 1 << u.index();
        }
        (covers == self.cover_adj).then_some(p)
    }
}

/// Every `P` in `P(n)` whose graph is `g`, sorted.
pub fn posets_of_graph(g: &ColoredGraph) -> Result<Vec<LiteralPoset>> {
    let sweep = Sweep::new(g)?;
    let mut out = crate::par::range_reduce(
        sweep.orientations(),
        Vec::new,
        |mask| sweep.candidate(mask).into_iter().collect::<Vec<_>>(),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    out.sort();
    Ok(out)
}

/// `|P(G)|` by a sequential sweep (callers parallelize across graphs).
pub fn count_posets_of_graph(g: &ColoredGraph) -> Result<u64> {
    let sweep = Sweep::new(g)?;
    Ok((0..sweep.orientations())
        .filter(|&m| sweep.candidate(m).is_some())
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::super::{all_colorings, eta, is_blue_bipartite, is_triangle_connected, Color::*};
    use super::*;
    use crate::litposet::{cover_relations, enumerate_pn_by_relation_sweep};

    fn lit(s: i64) -> Literal {
        Literal::from_signed(s).unwrap()
    }

    #[test]
    fn graph_of_poset_examples() {
        let p = LiteralPoset::generated_by(2, [(lit(-1), lit(2))]).unwrap();
        assert_eq!(
            graph_of_poset(&p).unwrap(),
            ColoredGraph::from_edges(2, [(0, 1, Red)]).unwrap()
        );
        let p = LiteralPoset::generated_by(2, [(lit(1), lit(2))]).unwrap();
        assert_eq!(
            graph_of_poset(&p).unwrap(),
            ColoredGraph::from_edges(2, [(0, 1, Blue)]).unwrap()
        );
        let p = LiteralPoset::antichain(3).unwrap();
        assert_eq!(graph_of_poset(&p).unwrap(), ColoredGraph::new(3).unwrap());
    }

    #[test]
    fn double_cover_examples() {
        let b = double_cover(&ColoredGraph::from_edges(2, [(0, 1, Blue)]).unwrap());
        assert_eq!(b.edges(), vec![(lit(1), lit(2)), (lit(-1), lit(-2))]);
        let r = double_cover(&ColoredGraph::from_edges(2, [(0, 1, Red)]).unwrap());
        assert_eq!(r.edges(), vec![(lit(1), lit(-2)), (lit(-1), lit(2))]);
        assert_eq!(double_cover(&ColoredGraph::new(3).unwrap()).edge_count(), 0);
        for g in all_colorings(4) {
            assert_eq!(double_cover(&g).edge_count(), 2 * g.edge_count());
        }
    }

    #[test]
    fn posets_of_graph_examples() {
        let edge = ColoredGraph::from_edges(2, [(0, 1, Blue)]).unwrap();
        let ps = posets_of_graph(&edge).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps
            .iter()
            .any(|p| p.less(lit(1), lit(2)) && p.less(lit(-2), lit(-1))));
        assert!(ps
            .iter()
            .any(|p| p.less(lit(2), lit(1)) && p.less(lit(-1), lit(-2))));

        let odd = ColoredGraph::from_edges(3, [(0, 1, Red), (1, 2, Red), (0, 2, Blue)]).unwrap();
        assert!(posets_of_graph(&odd).unwrap().is_empty());

        assert_eq!(
            posets_of_graph(&ColoredGraph::new(3).unwrap()).unwrap(),
            vec![LiteralPoset::antichain(3).unwrap()]
        );
    }

    #[test]
    fn sweep_inverts_graph_of_poset() {
        for n in 1..=3 {
            for p in enumerate_pn_by_relation_sweep(n).unwrap() {
                let g = graph_of_poset(&p).unwrap();
                assert_eq!(double_cover(&g), cover_relations(&p));
                assert!(posets_of_graph(&g).unwrap().contains(&p));
            }
        }
    }

    #[test]
    fn counts_agree_with_collected_posets() {
        for g in all_colorings(3) {
            assert_eq!(
                count_posets_of_graph(&g).unwrap(),
                posets_of_graph(&g).unwrap().len() as u64
            );
        }
    }

    #[test]
    fn orientation_bounds_on_four_vertices() {
        for g in all_colorings(4) {
            let c = count_posets_of_graph(&g).unwrap();
            assert!(c <= 1 << eta(&g), "{g:?}");
            if is_blue_bipartite(&g) && is_triangle_connected(&g) {
                assert!(c <= 2, "{g:?}");
            }
            if !is_obtf(&g) {
                assert_eq!(c, 0, "{g:?}");
            }
        }
    }
}
