//! Strict orders on the `2n` literals `x_1, ~x_1, ..., x_n, ~x_n`.
//!
//! Literal `i` is [`Literal::from_index`]`(i)`; relations are bit-matrices with
//! `rows[u] & (1 << v) != 0` meaning `u < v`.

use std::fmt;

use crate::boolfn::{self, Clause, Formula, Literal, TruthTable};
use crate::cgraph;
use crate::error::{Error, Result};

/// Largest variable count for literal relations (`2n` literals fit in a `u16` row).
pub const MAX_VARS: usize = 8;

/// Arbitrary binary relation on the literals of `n` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    n: u8,
    rows: [u16; 2 * MAX_VARS],
}

impl Relation {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::guard("literal relation variables", n, MAX_VARS));
        }
        Ok(Relation {
            n: n as u8,
            rows: [0; 2 * MAX_VARS],
        })
    }

    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (Literal, Literal)>,
    ) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for (a, b) in pairs {
            if a.var() >= n || b.var() >= n {
                return Err(Error::VariableOutOfRange {
                    var: a.var().max(b.var()) + 1,
                    n,
                });
            }
            r.insert(a.index(), b.index());
        }
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn literals(&self) -> usize {
        2 * self.n as usize
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.literals()]
    }

    pub fn insert(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
    }

    /// Adds `u < v` together with its negation dual `~v < ~u`.
    pub fn insert_dual(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v ^ 1] |= 1 << (u ^ 1);
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.rows().iter().all(|&r| r == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.literals()).flat_map(move |u| {
            (0..self.literals())
                .filter(move |&v| self.contains(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn transitive_closure(&self) -> Self {
        let mut out = *self;
        let m = self.literals();
        for k in 0..m {
            let via = out.rows[k];
            for u in 0..m {
                if out.rows[u] >> k & 1 == 1 {
                    out.rows[u] |= via;
                }
            }
        }
        out
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.literals()).all(|u| !self.contains(u, u))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.literals()).all(|u| {
            let row = self.rows[u];
            bits(row).all(|v| self.rows[v] & !row == 0)
        })
    }

    /// No literal is comparable to its own negation.
    pub fn negations_incomparable(&self) -> bool {
        (0..self.literals()).all(|u| !self.contains(u, u ^ 1))
    }

    /// `u < v` iff `~v < ~u`.
    pub fn is_negation_symmetric(&self) -> bool {
        self.pairs().all(|(u, v)| self.contains(v ^ 1, u ^ 1))
    }

    /// Covering pairs `u < v` with nothing strictly between, as rows.
    fn cover_rows(&self) -> [u16; 2 * MAX_VARS] {
        let mut covers = [0u16; 2 * MAX_VARS];
        for (cover, &row) in covers.iter_mut().zip(&self.rows[..self.literals()]) {
            let above_successors = bits(row).fold(0u16, |acc, v| acc | self.rows[v]);
            *cover = row & !above_successors;
        }
        covers
    }
}

pub(crate) fn bits(mut x: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

/// Strict partial order, irreflexive and transitive, in which no literal is
/// comparable to its negation and `u < v` iff `~v < ~u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiteralPoset(Relation);

pub fn is_pn_member(r: &Relation) -> bool {
    r.is_irreflexive()
        && r.is_transitive()
        && r.negations_incomparable()
        && r.is_negation_symmetric()
}

impl TryFrom<Relation> for LiteralPoset {
    type Error = Error;

    fn try_from(r: Relation) -> Result<Self> {
        if !r.is_irreflexive() {
            return Err(Error::NotPoset("relation is not irreflexive"));
        }
        if !r.is_transitive() {
            return Err(Error::NotPoset("relation is not transitive"));
        }
        if !r.negations_incomparable() {
            return Err(Error::NotPoset("a literal is comparable to its negation"));
        }
        if !r.is_negation_symmetric() {
            return Err(Error::NotPoset(
                "relation is not closed under negation duality",
            ));
        }
        Ok(LiteralPoset(r))
    }
}

impl LiteralPoset {
    pub fn antichain(n: usize) -> Result<Self> {
        Ok(LiteralPoset(Relation::empty(n)?))
    }

    /// Closes `pairs` under negation duality and transitivity, then validates.
    pub fn generated_by(
        n: usize,
        pairs: impl IntoIterator<Item = (Literal, Literal)>,
    ) -> Result<Self> {
        let mut r = Relation::empty(n)?;
        for (a, b) in pairs {
            if a.var() >= n || b.var() >= n {
                return Err(Error::VariableOutOfRange {
                    var: a.var().max(b.var()) + 1,
                    n,
                });
            }
            r.insert_dual(a.index(), b.index());
        }
        Self::try_from(r.transitive_closure())
    }

    pub(crate) fn from_valid(r: Relation) -> Self {
        debug_assert!(is_pn_member(&r));
        LiteralPoset(r)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn less(&self, u: Literal, v: Literal) -> bool {
        self.0.contains(u.index(), v.index())
    }

    /// All relations `u < v` as literal pairs.
    pub fn relations(&self) -> impl Iterator<Item = (Literal, Literal)> + '_ {
        self.0
            .pairs()
            .map(|(u, v)| (Literal::from_index(u), Literal::from_index(v)))
    }

    /// Directed covers `u ⋖ v`.
    pub fn covers(&self) -> Vec<(Literal, Literal)> {
        let rows = self.0.cover_rows();
        (0..self.0.literals())
            .flat_map(|u| {
                bits(rows[u]).map(move |v| (Literal::from_index(u), Literal::from_index(v)))
            })
            .collect()
    }
}

impl fmt::Display for LiteralPoset {
    /// Poset text format listing the cover relations.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n())?;
        for (u, v) in self.covers() {
            writeln!(f, "{} {}", u.to_signed(), v.to_signed())?;
        }
        Ok(())
    }
}

/// Undirected graph on the `2n` literals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverGraph {
    n: u8,
    adj: [u16; 2 * MAX_VARS],
}

impl CoverGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        CoverGraph {
            n: n as u8,
            adj: [0; 2 * MAX_VARS],
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn add_edge(&mut self, u: Literal, v: Literal) {
        let (a, b) = (u.index(), v.index());
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn has_edge(&self, u: Literal, v: Literal) -> bool {
        self.adj[u.index()] >> v.index() & 1 == 1
    }

    pub fn edges(&self) -> Vec<(Literal, Literal)> {
        (0..2 * self.n())
            .flat_map(|u| {
                bits(self.adj[u])
                    .filter(move |&v| v > u)
                    .map(move |v| (Literal::from_index(u), Literal::from_index(v)))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// `{u, v}` present iff `{~u, ~v}` present.
    pub fn is_negation_symmetric(&self) -> bool {
        self.edges()
            .iter()
            .all(|&(u, v)| self.has_edge(u.negate(), v.negate()))
    }
}

/// The order generated by a formula's clauses read as implications.
pub fn implication_poset(f: &Formula) -> Result<LiteralPoset> {
    if !boolfn::is_elementary(boolfn::truth_table(f)) {
        return Err(Error::NotElementary);
    }
    let mut r = Relation::empty(f.n())?;
    for c in f.clauses() {
        // (a v b): ~a < b and ~b < a
        r.insert_dual(c.first().negate().index(), c.second().index());
    }
    LiteralPoset::try_from(r.transitive_closure())
        .map_err(|e| Error::Invariant(format!("closure of an elementary formula: {e}")))
}

pub fn cover_relations(p: &LiteralPoset) -> CoverGraph {
    let mut g = CoverGraph::empty(p.n());
    for (u, v) in p.covers() {
        g.add_edge(u, v);
    }
    g
}

/// The conjunction of `~u v v` over every relation `u < v`.
pub fn poset_formula(p: &LiteralPoset) -> Formula {
    let clauses = p.relations().map(|(u, v)| {
        Clause::new(u.negate(), v).expect("comparable literals belong to different variables")
    });
    Formula::new(p.n(), clauses).expect("poset literals are in range")
}

pub fn poset_to_function(p: &LiteralPoset) -> TruthTable {
    boolfn::truth_table(&poset_formula(p))
}

/// Largest `n` accepted by [`enumerate_pn`].
pub const ENUMERATE_MAX: usize = 5;
/// Largest `n` accepted by [`enumerate_pn_by_relation_sweep`].
pub const RELATION_SWEEP_MAX: usize = 4;

/// Every member of `P(n)` exactly once, grouped by colored graph in colex
/// coloring order.
pub fn enumerate_pn(n: usize) -> Result<impl Iterator<Item = LiteralPoset>> {
    if n > ENUMERATE_MAX {
        return Err(Error::guard("enumerate_pn", n, ENUMERATE_MAX));
    }
    Ok(cgraph::all_colorings(n).flat_map(|g| {
        cgraph::posets_of_graph(&g)
            .expect("graphs on at most 5 vertices are within the orientation guard")
    }))
}

/// Representatives of the negation-duality orbits of candidate relation pairs.
fn dual_orbits(n: usize) -> Vec<(usize, usize)> {
    let m = 2 * n;
    let mut out = Vec::new();
    for u in 0..m {
        for v in 0..m {
            if u != v && v != u ^ 1 && (u, v) <= (v ^ 1, u ^ 1) {
                out.push((u, v));
            }
        }
    }
    out
}

/// `P(n)` by brute force over all duality-symmetric relations; independent of
/// the colored-graph machinery and used as its oracle.
pub fn enumerate_pn_by_relation_sweep(n: usize) -> Result<Vec<LiteralPoset>> {
    if n > RELATION_SWEEP_MAX {
        return Err(Error::guard("relation sweep", n, RELATION_SWEEP_MAX));
    }
    let orbits = dual_orbits(n);
    let base = Relation::empty(n)?;
    let found = crate::par::range_reduce(
        1u64 << orbits.len(),
        Vec::new,
        |mask| {
            let mut r = base;
            for (k, &(u, v)) in orbits.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    r.insert_dual(u, v);
                }
            }
            if r.is_irreflexive() && r.negations_incomparable() && r.is_transitive() {
                vec![LiteralPoset::from_valid(r)]
            } else {
                Vec::new()
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    let mut found = found;
    found.sort();
    Ok(found)
}
