//! Red/blue edge-colored graphs on labelled vertices `w_1..w_n`.
//!
//! Vertex pairs are ordered colexicographically: `(i, j)` with `i < j` comes
//! before `(i', j')` iff `j < j'`, or `j == j'` and `i < i'`. That order fixes
//! coloring codes, DFS branch order and parallel prefix splitting.

mod balance;
mod orient;
mod walks;

use std::fmt;

pub use balance::{
    bipartition_by_sweep, find_blue_bipartition, gamma, is_blue_bipartite, kappa, Bipartition,
    EdgeDeletion, Side, VertexDeletion, GAMMA_MAX_EDGES, KAPPA_MAX_VERTICES,
};
pub use orient::{
    count_posets_of_graph, cover_coloring, double_cover, graph_of_poset, posets_of_graph,
    ORIENT_MAX_EDGES,
};
pub use walks::{check_closed_walks, odd_blue_closed_walk, WALK_MAX_LEN};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredGraph {
    n: u8,
    adj: [u16; MAX_VERTICES],
    blue: [u16; MAX_VERTICES],
}

/// Vertices strictly above `j`.
pub(crate) fn above(j: usize) -> u16 {
    !(((2u32 << j) - 1) as u16)
}

/// Number of vertex pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Colex rank of the pair `{i, j}`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

/// All pairs `(i, j)`, `i < j < n`, in colex order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// `3^C(n,2)`, the number of colorings of the complete pair set.
pub fn coloring_count(n: usize) -> u64 {
    3u64.pow(pair_count(n) as u32)
}

impl ColoredGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::guard("colored graph vertices", n, MAX_VERTICES));
        }
        Ok(ColoredGraph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
            blue: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Color)>,
    ) -> Result<Self> {
        let mut g = Self::new(n)?;
        for (i, j, c) in edges {
            if i >= n || j >= n {
                return Err(Error::VariableOutOfRange {
                    var: i.max(j) + 1,
                    n,
                });
            }
            if i == j {
                return Err(Error::Precondition("self-pairs are not allowed"));
            }
            g.set(i, j, Some(c));
        }
        Ok(g)
    }

    /// Decodes a base-3 coloring code: digit `k` (least significant first)
    /// colors the `k`-th colex pair 0 = absent, 1 = red, 2 = blue.
    pub fn from_code(n: usize, mut code: u64) -> Self {
        let mut g = Self::new(n).expect("coloring codes are only built for small n");
        for j in 1..n {
            for i in 0..j {
                match code % 3 {
                    1 => g.set(i, j, Some(Color::Red)),
                    2 => g.set(i, j, Some(Color::Blue)),
                    _ => {}
                }
                code /= 3;
            }
        }
        g
    }

    pub fn code(&self) -> u64 {
        let mut code = 0u64;
        for &(i, j) in pairs(self.n()).iter().rev() {
            code = code * 3
                + match self.color(i, j) {
                    None => 0,
                    Some(Color::Red) => 1,
                    Some(Color::Blue) => 2,
                };
        }
        code
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn set(&mut self, i: usize, j: usize, color: Option<Color>) {
        let (bi, bj) = (1u16 << i, 1u16 << j);
        self.adj[i] &= !bj;
        self.adj[j] &= !bi;
        self.blue[i] &= !bj;
        self.blue[j] &= !bi;
        if let Some(c) = color {
            self.adj[i] |= bj;
            self.adj[j] |= bi;
            if c == Color::Blue {
                self.blue[i] |= bj;
                self.blue[j] |= bi;
            }
        }
    }

    pub fn color(&self, i: usize, j: usize) -> Option<Color> {
        if self.adj[i] >> j & 1 == 0 {
            None
        } else if self.blue[i] >> j & 1 == 1 {
            Some(Color::Blue)
        } else {
            Some(Color::Red)
        }
    }

    pub fn neighbors(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn blue_neighbors(&self, v: usize) -> u16 {
        self.blue[v]
    }

    pub fn is_blue(&self, i: usize, j: usize) -> bool {
        self.blue[i] >> j & 1 == 1
    }

    /// Edges `(i, j, color)` with `i < j`, in colex order.
    pub fn edges(&self) -> Vec<(usize, usize, Color)> {
        pairs(self.n())
            .into_iter()
            .filter_map(|(i, j)| self.color(i, j).map(|c| (i, j, c)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Removes every edge meeting a vertex of `vertices` (bitmask); labels are kept.
    pub fn without_vertices(&self, vertices: u16) -> Self {
        let mut g = *self;
        for v in 0..self.n() {
            if vertices >> v & 1 == 1 {
                g.adj[v] = 0;
                g.blue[v] = 0;
            } else {
                g.adj[v] &= !vertices;
                g.blue[v] &= !vertices;
            }
        }
        g
    }

    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Self {
        let mut g = *self;
        for &(i, j) in edges {
            g.set(i, j, None);
        }
        g
    }

    /// Triangles `(i, j, k)` with `i < j < k`.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, j, _) in self.edges() {
            let common = self.adj[i] & self.adj[j] & above(j);
            out.extend(crate::litposet::bits(common).map(|k| (i, j, k)));
        }
        out
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredGraph(n={}", self.n)?;
        for (i, j, c) in self.edges() {
            write!(f, " {}{}{}", i + 1, j + 1, c.letter())?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ColoredGraph {
    /// Colored-graph text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (i, j, c) in self.edges() {
            writeln!(f, "{} {} {}", i + 1, j + 1, c.letter())?;
        }
        Ok(())
    }
}

/// Every colored graph on `n` labelled vertices, in coloring-code order.
pub fn all_colorings(n: usize) -> impl Iterator<Item = ColoredGraph> {
    (0..coloring_count(n)).map(move |c| ColoredGraph::from_code(n, c))
}

/// No triangle has an odd number of blue edges.
pub fn is_obtf(g: &ColoredGraph) -> bool {
    for (i, j, _) in g.edges() {
        let common = g.adj[i] & g.adj[j] & above(j);
        // parity of blue(ik) + blue(jk) must match blue(ij) for every apex k
        let odd_apex = g.blue[i] ^ g.blue[j];
        let bad = if g.is_blue(i, j) {
            common & !odd_apex
        } else {
            common & odd_apex
        };
        if bad != 0 {
            return false;
        }
    }
    true
}

/// Partition of the edge set into triangle-components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleComponents {
    classes: Vec<Vec<(usize, usize)>>,
}

impl TriangleComponents {
    pub fn classes(&self) -> &[Vec<(usize, usize)>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn triangle_components(g: &ColoredGraph) -> TriangleComponents {
    let n = g.n();
    let mut parent: Vec<usize> = (0..pair_count(n)).collect();
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for (i, j, k) in g.triangles() {
        union(pair_index(i, j), pair_index(i, k));
        union(pair_index(i, j), pair_index(j, k));
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
    for (i, j, _) in g.edges() {
        let root = find(&mut parent, pair_index(i, j));
        classes.entry(root).or_default().push((i, j));
    }
    TriangleComponents {
        classes: classes.into_values().collect(),
    }
}

pub fn eta(g: &ColoredGraph) -> usize {
    triangle_components(g).len()
}

/// At most one triangle-component; edgeless graphs count as connected.
pub fn is_triangle_connected(g: &ColoredGraph) -> bool {
    eta(g) <= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{Blue, Red};

    pub(crate) fn triangle(a: Color, b: Color, c: Color) -> ColoredGraph {
        ColoredGraph::from_edges(3, [(0, 1, a), (1, 2, b), (0, 2, c)]).unwrap()
    }

    #[test]
    fn colex_pair_order() {
        assert_eq!(
            pairs(4),
            vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
        );
        for (k, (i, j)) in pairs(6).into_iter().enumerate() {
            assert_eq!(pair_index(i, j), k);
            assert_eq!(pair_index(j, i), k);
        }
    }

    #[test]
    fn coloring_codes_round_trip() {
        for code in 0..coloring_count(4) {
            assert_eq!(ColoredGraph::from_code(4, code).code(), code);
        }
    }

    #[test]
    fn obtf_examples() {
        assert!(!is_obtf(&triangle(Red, Red, Blue)));
        assert!(is_obtf(&triangle(Blue, Blue, Red)));
        assert!(is_obtf(&triangle(Red, Red, Red)));
        assert!(!is_obtf(&triangle(Blue, Blue, Blue)));
        let path = ColoredGraph::from_edges(4, [(0, 1, Blue), (1, 2, Red), (2, 3, Blue)]).unwrap();
        assert!(is_obtf(&path));
    }

    #[test]
    fn obtf_matches_triangle_scan() {
        for g in all_colorings(4) {
            let scan = g.triangles().iter().all(|&(i, j, k)| {
                let blues = [(i, j), (i, k), (j, k)]
                    .iter()
                    .filter(|&&(a, b)| g.is_blue(a, b))
                    .count();
                blues % 2 == 0
            });
            assert_eq!(is_obtf(&g), scan, "{g:?}");
        }
    }

    #[test]
    fn triangle_component_examples() {
        let t = triangle(Red, Blue, Blue);
        assert_eq!(
            triangle_components(&t).classes(),
            &[vec![(0, 1), (0, 2), (1, 2)]]
        );
        assert!(is_triangle_connected(&t));

        let bowtie = ColoredGraph::from_edges(
            5,
            [
                (0, 1, Red),
                (1, 2, Red),
                (0, 2, Red),
                (2, 3, Blue),
                (3, 4, Red),
                (2, 4, Blue),
            ],
        )
        .unwrap();
        assert_eq!(eta(&bowtie), 2);
        assert!(!is_triangle_connected(&bowtie));

        let edge = ColoredGraph::from_edges(2, [(0, 1, Blue)]).unwrap();
        assert_eq!(eta(&edge), 1);
        assert!(is_triangle_connected(&edge));

        let empty = ColoredGraph::new(3).unwrap();
        assert_eq!(eta(&empty), 0);
        assert!(is_triangle_connected(&empty));

        let four_cycle =
            ColoredGraph::from_edges(4, [(0, 1, Blue), (1, 2, Red), (2, 3, Red), (0, 3, Red)])
                .unwrap();
        assert_eq!(eta(&four_cycle), 4);
    }

    #[test]
    fn k4_is_one_component() {
        let k4 =
            ColoredGraph::from_edges(4, pairs(4).into_iter().map(|(i, j)| (i, j, Red))).unwrap();
        assert_eq!(eta(&k4), 1);
        assert_eq!(triangle_components(&k4).classes()[0].len(), 6);
    }

    #[test]
    fn text_format() {
        let g = ColoredGraph::from_edges(3, [(0, 2, Blue), (0, 1, Red)]).unwrap();
        assert_eq!(g.to_string(), "n 3\n1 2 R\n1 3 B\n");
    }
}
