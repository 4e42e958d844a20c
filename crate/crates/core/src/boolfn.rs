//! Boolean-function semantics of 2-SAT formulas.
//!
//! A function of `n <= 6` variables is stored as its set of satisfying
//! assignments packed into a `u64`: assignment `a` (bit `i` of `a` is the
//! value of variable `i`) sets bit `a` of the table.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest variable count a [`TruthTable`] can hold.
pub const MAX_VARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A literal `x_i` or its negation. Variables are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: u8,
    polarity: Polarity,
}

impl Literal {
    pub fn new(var: usize, polarity: Polarity) -> Self {
        Literal {
            var: var as u8,
            polarity,
        }
    }

    pub fn pos(var: usize) -> Self {
        Self::new(var, Polarity::Positive)
    }

    pub fn neg(var: usize) -> Self {
        Self::new(var, Polarity::Negative)
    }

    /// Dense index in `0..2n`: `2 * var` for `x`, `2 * var + 1` for its negation.
    pub fn from_index(index: usize) -> Self {
        let polarity = if index & 1 == 0 {
            Polarity::Positive
        } else {
            Polarity::Negative
        };
        Self::new(index >> 1, polarity)
    }

    pub fn index(self) -> usize {
        2 * self.var as usize + self.is_negative() as usize
    }

    pub fn var(self) -> usize {
        self.var as usize
    }

    pub fn polarity(self) -> Polarity {
        self.polarity
    }

    pub fn is_negative(self) -> bool {
        self.polarity == Polarity::Negative
    }

    pub fn negate(self) -> Self {
        let polarity = match self.polarity {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        };
        Literal { polarity, ..self }
    }

    /// 1-based signed form used by the text formats: `3` is `x_3`, `-3` its negation.
    pub fn to_signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    pub fn from_signed(value: i64) -> Option<Self> {
        match value {
            0 => None,
            v if v > 0 => Some(Literal::pos(v as usize - 1)),
            v => Some(Literal::neg((-v) as usize - 1)),
        }
    }

    /// Assignments (as a table over `n` variables) on which the literal is true.
    pub fn mask(self, n: usize) -> u64 {
        let m = var_mask(n, self.var());
        if self.is_negative() {
            !m & full_mask(n)
        } else {
            m
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "~x{}", self.var + 1)
        } else {
            write!(f, "x{}", self.var + 1)
        }
    }
}

/// An unordered 2-clause over two different variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    first: Literal,
    second: Literal,
}

impl Clause {
    pub fn new(a: Literal, b: Literal) -> Result<Self> {
        if a.var() == b.var() {
            return Err(Error::SameVariable(a.var() + 1));
        }
        let (first, second) = if a.index() < b.index() {
            (a, b)
        } else {
            (b, a)
        };
        Ok(Clause { first, second })
    }

    pub fn first(self) -> Literal {
        self.first
    }

    pub fn second(self) -> Literal {
        self.second
    }

    pub fn max_var(self) -> usize {
        self.first.var().max(self.second.var())
    }

    /// Assignments satisfying the clause.
    pub fn mask(self, n: usize) -> u64 {
        self.first.mask(n) | self.second.mask(n)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} v {})", self.first, self.second)
    }
}

/// All `4 * C(n, 2)` clauses on `n` variables in canonical order.
pub fn all_clauses(n: usize) -> Vec<Clause> {
    let mut out = Vec::with_capacity(2 * n * n.saturating_sub(1));
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            let (la, lb) = (Literal::from_index(a), Literal::from_index(b));
            if la.var() != lb.var() {
                out.push(Clause {
                    first: la,
                    second: lb,
                });
            }
        }
    }
    out
}

/// A conjunction of clauses. Duplicates collapse; the empty formula is allowed
/// and denotes the constant-True function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    n: usize,
    clauses: BTreeSet<Clause>,
}

impl Formula {
    pub fn new(n: usize, clauses: impl IntoIterator<Item = Clause>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::guard("formula variables", n, MAX_VARS));
        }
        let clauses: BTreeSet<Clause> = clauses.into_iter().collect();
        if let Some(c) = clauses.iter().find(|c| c.max_var() >= n) {
            return Err(Error::VariableOutOfRange {
                var: c.max_var() + 1,
                n,
            });
        }
        Ok(Formula { n, clauses })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> impl Iterator<Item = Clause> + '_ {
        self.clauses.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn with_clause(&self, c: Clause) -> Result<Self> {
        Self::new(self.n, self.clauses.iter().copied().chain([c]))
    }
}

/// Bitmask of all `2^n` assignments.
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_VARS);
    if n == MAX_VARS {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

const VAR_PATTERNS: [u64; MAX_VARS] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Assignments over `n` variables in which variable `var` is true.
pub fn var_mask(n: usize, var: usize) -> u64 {
    VAR_PATTERNS[var] & full_mask(n)
}

/// The set of satisfying assignments of a function of `n` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruthTable {
    n: u8,
    bits: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    /// `x_i <=> x_j` on every satisfying assignment.
    Same,
    /// `x_i <=> ~x_j` on every satisfying assignment.
    Opposite,
}

impl TruthTable {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::guard("truth table variables", n, MAX_VARS));
        }
        if bits & !full_mask(n) != 0 {
            return Err(Error::Precondition("assignment index out of range"));
        }
        Ok(TruthTable { n: n as u8, bits })
    }

    pub fn from_assignments(n: usize, assignments: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut bits = 0u64;
        for a in assignments {
            if n > MAX_VARS || a >= 1 << n {
                return Err(Error::Precondition("assignment index out of range"));
            }
            bits |= 1 << a;
        }
        Self::new(n, bits)
    }

    pub fn full(n: usize) -> Self {
        TruthTable {
            n: n as u8,
            bits: full_mask(n),
        }
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn contains(self, assignment: u32) -> bool {
        assignment < 64 && self.bits >> assignment & 1 == 1
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_satisfiable(self) -> bool {
        self.bits != 0
    }

    pub fn is_full(self) -> bool {
        self.bits == full_mask(self.n())
    }

    pub fn assignments(self) -> impl Iterator<Item = u32> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let a = rest.trailing_zeros();
            rest &= rest - 1;
            Some(a)
        })
    }

    /// Relabels assignments so that new variable `perm[i]` carries old variable `i`.
    pub fn permute_vars(self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n());
        let bits = self.assignments().fold(0u64, |acc, a| {
            let moved = (0..self.n()).fold(0u32, |b, i| b | ((a >> i & 1) << perm[i]));
            acc | 1 << moved
        });
        TruthTable { bits, ..self }
    }

    /// Exchanges the roles of `x_var` and its negation.
    pub fn flip_var(self, var: usize) -> Self {
        let bits = self
            .assignments()
            .fold(0u64, |acc, a| acc | 1 << (a ^ (1 << var)));
        TruthTable { bits, ..self }
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (1usize << self.n).div_ceil(4).max(1);
        write!(f, "n={} 0x{:0width$x}", self.n, self.bits, width = width)
    }
}

pub fn truth_table(f: &Formula) -> TruthTable {
    let n = f.n();
    let bits = f.clauses().fold(full_mask(n), |acc, c| acc & c.mask(n));
    TruthTable { n: n as u8, bits }
}

/// Variables that take a single value on every satisfying assignment, with that value.
pub fn spine(t: TruthTable) -> Result<Vec<(usize, bool)>> {
    if !t.is_satisfiable() {
        return Err(Error::Trivial);
    }
    let n = t.n();
    Ok((0..n)
        .filter_map(|i| {
            let m = var_mask(n, i);
            if t.bits & m == t.bits {
                Some((i, true))
            } else if t.bits & m == 0 {
                Some((i, false))
            } else {
                None
            }
        })
        .collect())
}

/// Assignments on which `x_i` and `x_j` agree.
fn agree_mask(n: usize, i: usize, j: usize) -> u64 {
    !(var_mask(n, i) ^ var_mask(n, j)) & full_mask(n)
}

/// Pairs `i < j` that are equal (or complementary) on every satisfying assignment.
pub fn associated_pairs(t: TruthTable) -> Result<Vec<(usize, usize, Sign)>> {
    if !t.is_satisfiable() {
        return Err(Error::Trivial);
    }
    let n = t.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let agree = agree_mask(n, i, j);
            if t.bits & agree == t.bits {
                out.push((i, j, Sign::Same));
            }
            if t.bits & agree == 0 {
                out.push((i, j, Sign::Opposite));
            }
        }
    }
    Ok(out)
}

/// Satisfiable, empty spine and no associated pairs. Unsatisfiable tables are never elementary.
pub fn is_elementary(t: TruthTable) -> bool {
    if !t.is_satisfiable() {
        return false;
    }
    let (n, bits) = (t.n(), t.bits);
    let spine_free = (0..n).all(|i| {
        let m = var_mask(n, i);
        bits & m != bits && bits & m != 0
    });
    spine_free
        && (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let agree = agree_mask(n, i, j);
                bits & agree != bits && bits & agree != 0
            })
        })
}

/// Coordinatewise majority of three assignments.
pub fn majority(a: u32, b: u32, c: u32) -> u32 {
    (a & b) | (a & c) | (b & c)
}

pub fn is_median_closed(t: TruthTable) -> bool {
    let points: Vec<u32> = t.assignments().collect();
    for (x, &a) in points.iter().enumerate() {
        for (y, &b) in points.iter().enumerate().skip(x + 1) {
            for &c in &points[y + 1..] {
                if !t.contains(majority(a, b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether some formula (the empty one only if `allow_empty`) has table `t`.
pub fn is_2sat_definable(t: TruthTable, allow_empty: bool) -> bool {
    if t.n() < 2 {
        return allow_empty && t.is_full();
    }
    is_median_closed(t) && (allow_empty || !t.is_full())
}

/// Every clause satisfied by all assignments of `t`. For a definable table
/// this formula realizes `t`; for constant True it is empty.
pub fn implied_formula(t: TruthTable) -> Formula {
    let n = t.n();
    let clauses = all_clauses(n)
        .into_iter()
        .filter(|c| t.bits & !c.mask(n) == 0);
    Formula::new(n, clauses).expect("clauses are generated in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tt(n: usize, a: &[u32]) -> TruthTable {
        TruthTable::from_assignments(n, a.iter().copied()).unwrap()
    }

    fn clause(a: i64, b: i64) -> Clause {
        Clause::new(
            Literal::from_signed(a).unwrap(),
            Literal::from_signed(b).unwrap(),
        )
        .unwrap()
    }

    // Direct evaluation, one assignment at a time.
    fn eval_oracle(f: &Formula) -> TruthTable {
        let n = f.n();
        let sat = (0..1u32 << n).filter(|&a| {
            f.clauses().all(|c| {
                [c.first(), c.second()]
                    .iter()
                    .any(|l| (a >> l.var() & 1 == 1) != l.is_negative())
            })
        });
        tt(n, &sat.collect::<Vec<_>>())
    }

    #[test]
    fn literal_negation_is_involution() {
        for i in 0..12 {
            let l = Literal::from_index(i);
            assert_eq!(l.negate().negate(), l);
            assert_eq!(l.negate().var(), l.var());
            assert_eq!(l.negate().index(), i ^ 1);
            assert_eq!(Literal::from_signed(l.to_signed()), Some(l));
        }
    }

    #[test]
    fn clause_is_unordered_and_rejects_one_variable() {
        assert_eq!(clause(1, -2), clause(-2, 1));
        assert_eq!(
            Clause::new(Literal::pos(0), Literal::neg(0)),
            Err(Error::SameVariable(1))
        );
        assert_eq!(all_clauses(2).len(), 4);
        assert_eq!(all_clauses(5).len(), 40);
    }

    #[test]
    fn formula_rejects_out_of_range_variables() {
        assert!(Formula::new(2, [clause(1, 3)]).is_err());
    }

    #[test]
    fn truth_table_examples() {
        let f = Formula::new(2, [clause(1, 2)]).unwrap();
        assert_eq!(truth_table(&f), tt(2, &[0b01, 0b10, 0b11]));
        assert_eq!(
            truth_table(&Formula::empty(2).unwrap()),
            TruthTable::full(2)
        );
        let all = Formula::new(
            2,
            [clause(1, 2), clause(-1, 2), clause(1, -2), clause(-1, -2)],
        )
        .unwrap();
        assert_eq!(eval_oracle(&all).bits(), 0);
        assert_eq!(truth_table(&all).bits(), 0);
    }

    #[test]
    fn spine_examples() {
        assert_eq!(spine(tt(2, &[0b11])).unwrap(), vec![(0, true), (1, true)]);
        assert_eq!(spine(tt(2, &[0b01, 0b10, 0b11])).unwrap(), vec![]);
        // {x1=1,x2=0} and {x1=1,x2=1}
        assert_eq!(spine(tt(2, &[0b01, 0b11])).unwrap(), vec![(0, true)]);
        assert_eq!(spine(tt(2, &[])), Err(Error::Trivial));
    }

    #[test]
    fn associated_pair_examples() {
        assert_eq!(
            associated_pairs(tt(2, &[0b00, 0b11])).unwrap(),
            vec![(0, 1, Sign::Same)]
        );
        assert_eq!(
            associated_pairs(tt(2, &[0b01, 0b10])).unwrap(),
            vec![(0, 1, Sign::Opposite)]
        );
        assert!(associated_pairs(tt(2, &[0b01, 0b10, 0b11]))
            .unwrap()
            .is_empty());
        assert_eq!(associated_pairs(tt(2, &[])), Err(Error::Trivial));
        // singleton: both spine entries and the association hold together
        let single = tt(2, &[0b11]);
        assert_eq!(spine(single).unwrap().len(), 2);
        assert_eq!(associated_pairs(single).unwrap(), vec![(0, 1, Sign::Same)]);
    }

    #[test]
    fn elementary_examples() {
        assert!(is_elementary(tt(2, &[0b01, 0b10, 0b11])));
        assert!(!is_elementary(tt(2, &[0b00, 0b11])));
        assert!(is_elementary(tt(1, &[0, 1])));
        assert!(!is_elementary(tt(2, &[])));
    }

    #[test]
    fn median_examples() {
        assert!(is_median_closed(tt(2, &[0b01, 0b10, 0b11])));
        assert!(is_median_closed(tt(3, &[0b001, 0b110])));
        assert!(!is_median_closed(tt(3, &[0b001, 0b010, 0b100])));
    }

    #[test]
    fn definability_examples() {
        assert!(is_2sat_definable(tt(2, &[0b01, 0b10, 0b11]), false));
        assert!(!is_2sat_definable(TruthTable::full(2), false));
        assert!(is_2sat_definable(TruthTable::full(2), true));
        assert!(!is_2sat_definable(TruthTable::full(1), false));
        assert!(is_2sat_definable(TruthTable::full(1), true));
        assert!(!is_2sat_definable(tt(1, &[1]), true));
    }

    #[test]
    fn full_table_needs_the_empty_formula_at_n2() {
        // every nonempty clause subset excludes at least one assignment
        let clauses = all_clauses(2);
        for mask in 1u32..16 {
            let f =
                Formula::new(2, (0..4).filter(|i| mask >> i & 1 == 1).map(|i| clauses[i])).unwrap();
            assert!(!truth_table(&f).is_full());
        }
    }

    #[test]
    fn definable_tables_match_formula_sweep() {
        for n in 0..=3usize {
            let clauses = all_clauses(n);
            let mut swept = BTreeSet::new();
            for mask in 1u64..1 << clauses.len() {
                let f = Formula::new(
                    n,
                    (0..clauses.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| clauses[i]),
                )
                .unwrap();
                swept.insert(truth_table(&f).bits());
            }
            let decided: BTreeSet<u64> = (0..=full_mask(n))
                .filter(|&b| is_2sat_definable(TruthTable::new(n, b).unwrap(), false))
                .collect();
            assert_eq!(swept, decided, "n = {n}");
        }
    }

    #[test]
    fn implied_formula_realizes_definable_tables() {
        for bits in 0..=full_mask(3) {
            let t = TruthTable::new(3, bits).unwrap();
            if is_2sat_definable(t, true) {
                assert_eq!(truth_table(&implied_formula(t)), t);
            }
        }
    }

    fn formula_strategy(n: usize) -> impl Strategy<Value = Formula> {
        let clauses = all_clauses(n);
        proptest::collection::vec(0..clauses.len(), 0..12)
            .prop_map(move |ix| Formula::new(n, ix.into_iter().map(|i| clauses[i])).unwrap())
    }

    proptest! {
        #[test]
        fn table_matches_direct_evaluation(f in formula_strategy(4)) {
            prop_assert_eq!(truth_table(&f), eval_oracle(&f));
        }

        #[test]
        fn adding_a_clause_never_adds_assignments(f in formula_strategy(4), extra in 0usize..24) {
            let g = f.with_clause(all_clauses(4)[extra]).unwrap();
            let (a, b) = (truth_table(&f).bits(), truth_table(&g).bits());
            prop_assert_eq!(b & !a, 0);
        }

        #[test]
        fn formula_tables_are_median_closed(f in formula_strategy(5)) {
            prop_assert!(is_median_closed(truth_table(&f)));
        }

        #[test]
        fn elementarity_is_invariant_under_relabelling(
            f in formula_strategy(4),
            perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
            flips in 0u32..16,
        ) {
            let t = truth_table(&f);
            let mut u = t.permute_vars(&perm);
            for v in 0..4 {
                if flips >> v & 1 == 1 {
                    u = u.flip_var(v);
                }
            }
            prop_assert_eq!(is_elementary(t), is_elementary(u));
        }

        #[test]
        fn spine_and_pairs_agree_with_column_scan(bits in 1u64..=0xFFFF) {
            let t = TruthTable::new(4, bits).unwrap();
            let rows: Vec<u32> = t.assignments().collect();
            let col = |i: usize| rows.iter().map(|a| a >> i & 1).collect::<Vec<_>>();
            let expected: Vec<(usize, bool)> = (0..4)
                .filter_map(|i| {
                    let c = col(i);
                    if c.iter().all(|&v| v == 1) { Some((i, true)) }
                    else if c.iter().all(|&v| v == 0) { Some((i, false)) }
                    else { None }
                })
                .collect();
            prop_assert_eq!(spine(t).unwrap(), expected);
            for (i, j, s) in associated_pairs(t).unwrap() {
                let same = rows.iter().all(|a| (a >> i & 1) == (a >> j & 1));
                let opp = rows.iter().all(|a| (a >> i & 1) != (a >> j & 1));
                let holds = match s { Sign::Same => same, Sign::Opposite => opp };
                prop_assert!(holds);
            }
        }
    }
}
