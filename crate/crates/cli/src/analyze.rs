use std::fmt;

use obtf_core::cgraph::{
    eta, find_blue_bipartition, gamma, is_obtf, is_triangle_connected, kappa, posets_of_graph,
    ColoredGraph, Side,
};
use obtf_core::litposet;
use serde::{Deserialize, Serialize};

/// Vertex ids in the report are 1-based, as in the graph file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub n: usize,
    pub edges: usize,
    pub obtf: bool,
    /// `[U, W]`, or absent when the graph is not blue-bipartite.
    pub bipartition: Option<[Vec<usize>; 2]>,
    pub kappa: Option<Deletion<usize>>,
    pub gamma: Option<Deletion<(usize, usize)>>,
    pub eta: usize,
    pub triangle_connected: bool,
    pub poset_count: Option<u64>,
    pub posets: Option<Vec<String>>,
    /// Fields left out because the graph exceeds their size guard.
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deletion<T> {
    pub size: usize,
    pub witness: Vec<T>,
}

pub fn analyze(g: &ColoredGraph) -> Analysis {
    let one = |v: usize| v + 1;
    let mut skipped = Vec::new();
    let bipartition = find_blue_bipartition(g)
        .map(|b| [b.part(Side::U), b.part(Side::W)].map(|p| p.into_iter().map(one).collect()));
    let kappa = match kappa(g) {
        Ok(k) => Some(Deletion {
            size: k.size,
            witness: k.vertices.into_iter().map(one).collect(),
        }),
        Err(e) => {
            skipped.push(format!("kappa: {e}"));
            None
        }
    };
    let gamma = match gamma(g) {
        Ok(k) => Some(Deletion {
            size: k.size,
            witness: k.edges.into_iter().map(|(i, j)| (i + 1, j + 1)).collect(),
        }),
        Err(e) => {
            skipped.push(format!("gamma: {e}"));
            None
        }
    };
    let posets = if g.n() > litposet::MAX_VARS {
        skipped.push(format!("posets: more than {} vertices", litposet::MAX_VARS));
        None
    } else {
        match posets_of_graph(g) {
            Ok(ps) => Some(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            Err(e) => {
                skipped.push(format!("posets: {e}"));
                None
            }
        }
    };
    Analysis {
        n: g.n(),
        edges: g.edge_count(),
        obtf: is_obtf(g),
        bipartition,
        kappa,
        gamma,
        eta: eta(g),
        triangle_connected: is_triangle_connected(g),
        poset_count: posets.as_ref().map(|p| p.len() as u64),
        posets,
        skipped,
    }
}

fn set(vs: &[usize]) -> String {
    let items: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices            {}", self.n)?;
        writeln!(f, "edges               {}", self.edges)?;
        writeln!(f, "OBTF                {}", self.obtf)?;
        match &self.bipartition {
            Some([u, w]) => writeln!(f, "blue bipartition    U={} W={}", set(u), set(w))?,
            None => writeln!(f, "blue bipartition    none")?,
        }
        if let Some(k) = &self.kappa {
            writeln!(
                f,
                "kappa               {} delete {}",
                k.size,
                set(&k.witness)
            )?;
        }
        if let Some(k) = &self.gamma {
            let edges: Vec<String> = k.witness.iter().map(|(i, j)| format!("{i}-{j}")).collect();
            writeln!(
                f,
                "gamma               {} delete {{{}}}",
                k.size,
                edges.join(",")
            )?;
        }
        writeln!(f, "eta                 {}", self.eta)?;
        writeln!(f, "triangle-connected  {}", self.triangle_connected)?;
        if let Some(c) = self.poset_count {
            writeln!(f, "posets              {c}")?;
        }
        for s in &self.skipped {
            writeln!(f, "skipped             {s}")?;
        }
        for (k, p) in self.posets.iter().flatten().enumerate() {
            write!(f, "\n# poset {}\n{p}", k + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use obtf_core::text::parse_graph;

    #[test]
    fn single_blue_edge() {
        let a = analyze(&parse_graph("n 2\n1 2 B\n").unwrap());
        assert!(a.obtf);
        assert_eq!(a.bipartition, Some([vec![1], vec![2]]));
        assert_eq!(a.kappa.as_ref().map(|k| k.size), Some(0));
        assert_eq!(a.gamma.as_ref().map(|k| k.size), Some(0));
        assert_eq!((a.eta, a.poset_count), (1, Some(2)));
    }

    #[test]
    fn four_cycle_with_one_blue_edge() {
        let a = analyze(&parse_graph("n 4\n1 2 B\n2 3 R\n3 4 R\n1 4 R\n").unwrap());
        assert!(a.obtf);
        assert_eq!(a.bipartition, None);
        assert_eq!(a.kappa.as_ref().map(|k| k.size), Some(1));
        assert_eq!(a.gamma.as_ref().map(|k| k.size), Some(1));
        assert_eq!(a.eta, 4);
        assert!(!a.triangle_connected);
    }

    #[test]
    fn odd_blue_triangle_has_no_posets() {
        let a = analyze(&parse_graph("n 3\n1 2 B\n2 3 R\n1 3 R\n").unwrap());
        assert!(!a.obtf);
        assert_eq!(a.poset_count, Some(0));
    }

    #[test]
    fn large_graph_skips_guarded_fields() {
        let mut text = "n 9\n".to_string();
        for i in 1..=8 {
            text += &format!("{i} {} R\n", i + 1);
        }
        let a = analyze(&parse_graph(&text).unwrap());
        assert!(a.poset_count.is_none());
        assert!(a.skipped.iter().any(|s| s.starts_with("posets")));
        assert!(a.kappa.is_some());
    }

    #[test]
    fn json_round_trips() {
        let a = analyze(&ColoredGraph::new(3).unwrap());
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<Analysis>(&s).unwrap(), a);
    }
}
