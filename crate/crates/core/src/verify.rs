//! Cross-checks between the engines and the structural laws relating
//! functions, literal posets and colored graphs.
//!
//! Every check yields one [`Check`] line. Failures carry a witness rendered in
//! the text formats of [`crate::text`] so it can be fed back to the CLI.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boolfn::{all_clauses, implied_formula, is_elementary, truth_table, Formula};
use crate::census::{self, functions, graphs, CensusRecord, Convention, FunctionTally};
use crate::cgraph::{
    self, check_closed_walks, count_posets_of_graph, cover_coloring, double_cover, eta,
    find_blue_bipartition, gamma, is_blue_bipartite, is_triangle_connected, kappa, ColoredGraph,
};
use crate::error::{Error, Result};
use crate::litposet::{self, cover_relations, implication_poset, poset_to_function, LiteralPoset};
use crate::text::render_formula;

/// Largest `n` verified without `big`.
pub const DEFAULT_MAX: usize = 4;
/// Largest `n` verified at all.
pub const BIG_MAX: usize = 5;
/// Largest `n` in the descriptive ratio table.
pub const RATIO_MAX: usize = 6;
pub const DEFAULT_SEED: u64 = 0x5eed_0b7f;
/// Elementary functions sampled per `n` where formulas cannot be swept.
pub const SAMPLES: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Descriptive only.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub n: Option<usize>,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, n: impl Into<Option<usize>>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            n: n.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            witness: None,
        }
    }

    fn info(name: &str, n: impl Into<Option<usize>>, detail: impl Into<String>) -> Self {
        Check {
            status: Status::Info,
            ..Check::new(name, n, true, detail)
        }
    }

    fn witness(mut self, w: Option<String>) -> Self {
        if self.status == Status::Fail {
            self.witness = w;
        }
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.status, self.name)?;
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        write!(f, ": {}", self.detail)?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness:")?;
            for line in w.lines() {
                write!(f, "\n    {line}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str, n: Option<usize>) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name && c.n == n)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let fails = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), fails)
    }
}

/// Replaceable predicates, so the suite itself can be mutation-tested.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub is_obtf: fn(&ColoredGraph) -> bool,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            is_obtf: cgraph::is_obtf,
        }
    }
}

impl Hooks {
    /// `is_obtf` answering the opposite of the truth.
    pub fn obtf_inverted() -> Self {
        fn inverted(g: &ColoredGraph) -> bool {
            !cgraph::is_obtf(g)
        }
        Hooks { is_obtf: inverted }
    }
}

impl fmt::Debug for Hooks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hooks").finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub lo: usize,
    pub hi: usize,
    pub big: bool,
    pub seed: u64,
    pub hooks: Hooks,
}

impl Config {
    pub fn new(lo: usize, hi: usize) -> Self {
        Config {
            lo,
            hi,
            big: false,
            seed: DEFAULT_SEED,
            hooks: Hooks::default(),
        }
    }

    pub fn check_range(&self) -> Result<()> {
        if self.lo < 1 || self.lo > self.hi {
            return Err(Error::Precondition(
                "verify range must be lo..hi with 1 <= lo <= hi",
            ));
        }
        let max = if self.big { BIG_MAX } else { DEFAULT_MAX };
        if self.hi > max {
            let what = if self.big {
                "verify range"
            } else {
                "verify range without --big"
            };
            return Err(Error::guard(what, self.hi, max));
        }
        Ok(())
    }

    fn range(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

/// Identities and property suites over the configured range.
pub fn run(cfg: &Config) -> Result<Report> {
    cfg.check_range()?;
    let mut report = verify_identities(cfg)?;
    report.extend(verify_properties(cfg)?);
    Ok(report)
}

fn tally(n: usize) -> Result<FunctionTally> {
    if n == 0 {
        // one function on zero variables, constant True, reachable only by the empty formula
        return Ok(FunctionTally {
            functions_t1: 0,
            functions_t0: 1,
            elementary_t1: 0,
            elementary_t0: 1,
        });
    }
    functions::closure_enum(n)
}

fn tally_str(t: &FunctionTally) -> String {
    format!(
        "{}/{} {}/{}",
        t.functions_t1, t.functions_t0, t.elementary_t1, t.elementary_t0
    )
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn pick(t: &FunctionTally, conv: Convention) -> (u64, u64) {
    match conv {
        Convention::T1 => (t.functions_t1, t.elementary_t1),
        Convention::T0 => (t.functions_t0, t.elementary_t0),
    }
}

/// Counts cross-checked against each other and against closed expressions.
pub fn verify_identities(cfg: &Config) -> Result<Report> {
    cfg.check_range()?;
    let mut checks = Vec::new();
    let tallies: Vec<FunctionTally> = (0..=cfg.hi).map(tally).collect::<Result<_>>()?;

    for n in cfg.range() {
        let t = &tallies[n];
        if n >= 2 {
            for conv in [Convention::T1, Convention::T0] {
                let (g, _) = pick(t, conv);
                let bound = (1u128 << n) * ((1u128 << binom(n, 2)) - 1);
                checks.push(Check::new(
                    &format!("lower-bound-{conv}"),
                    n,
                    g as u128 > bound,
                    format!("G = {g} > 2^n (2^C(n,2) - 1) = {bound}"),
                ));
            }
        }

        for conv in [Convention::T0, Convention::T1] {
            let (g, h) = pick(t, conv);
            let upper: u128 = 1
                + (0..=n)
                    .map(|k| {
                        let (_, h_rest) = pick(&tallies[n - k], conv);
                        h_rest as u128 * binom(n, k) * ((2 * (n - k) + 2) as u128).pow(k as u32)
                    })
                    .sum::<u128>();
            let holds = h as u128 <= g as u128 && g as u128 <= upper;
            let detail = format!("H = {h} <= G = {g} <= {upper}");
            checks.push(match conv {
                Convention::T0 => Check::new("chain-t0", n, holds, detail),
                Convention::T1 => Check::info(
                    "chain-t1",
                    n,
                    format!(
                        "{detail}: {}",
                        if holds { "holds" } else { "does not hold" }
                    ),
                ),
            });
        }

        if n >= 2 {
            checks.push(Check::new(
                "conventions",
                n,
                t.functions_t0 == t.functions_t1 + 1 && t.elementary_t0 == t.elementary_t1 + 1,
                format!(
                    "G t0/t1 = {}/{}, H t0/t1 = {}/{}",
                    t.functions_t0, t.functions_t1, t.elementary_t0, t.elementary_t1
                ),
            ));
        }

        if n <= functions::FORMULA_SWEEP_MAX {
            let sweep = functions::formula_sweep(n)?;
            checks.push(Check::new(
                "engine-G-H",
                n,
                sweep == *t,
                format!(
                    "G t1/t0, H t1/t0: closure-enum {}, formula-sweep {}",
                    tally_str(t),
                    tally_str(&sweep)
                ),
            ));
        }

        let dfs = graphs::obtf_dfs(n)?;
        let flat = graphs::obtf_flat_with(n, cfg.hooks.is_obtf)?;
        checks.push(Check::new(
            "engine-F",
            n,
            dfs == flat,
            format!("pruned-dfs {dfs}, flat-sweep {flat}"),
        ));

        let closed = graphs::bb_closed_form(n)?;
        let bb = graphs::bb_flat(n)?;
        checks.push(Check::new(
            "engine-B",
            n,
            closed == bb,
            format!("closed-form {closed}, flat-sweep {bb}"),
        ));
        checks.push(Check::new(
            "F-ge-B",
            n,
            dfs >= closed,
            format!("F = {dfs}, B = {closed}"),
        ));

        // |P(n)| through the graphs the predicate calls OBTF
        let (pn, witness) = pn_through_graphs(n, cfg.hooks)?;
        checks.push(
            Check::new(
                "bijection",
                n,
                pn == t.elementary_t0,
                format!(
                    "sum over OBTF graphs of |P(G)| = {pn}, H t0 = {}",
                    t.elementary_t0
                ),
            )
            .witness(witness),
        );

        if n <= litposet::RELATION_SWEEP_MAX {
            let direct = graphs::pn_relation_sweep(n)?;
            let orient = graphs::pn_orientation_sweep(n)?;
            checks.push(Check::new(
                "engine-Pn",
                n,
                direct == orient,
                format!("orientation-sweep {orient}, relation-sweep {direct}"),
            ));
        }
    }

    for n in 1..=RATIO_MAX.max(cfg.hi) {
        checks.push(Check::info("ratios", n, ratio_line(n, tallies.get(n))?));
    }
    Ok(Report { checks })
}

/// Sum of `|P(G)|` over graphs accepted by the hook; the first graph with
/// posets that the hook rejects is the witness.
fn pn_through_graphs(n: usize, hooks: Hooks) -> Result<(u64, Option<String>)> {
    let total = cgraph::coloring_count(n);
    let (sum, rejected) = crate::par::range_reduce(
        total,
        || (0u64, None::<u64>),
        |code| {
            let g = ColoredGraph::from_code(n, code);
            let c = count_posets_of_graph(&g).expect("n within guard");
            if (hooks.is_obtf)(&g) {
                (c, None)
            } else {
                (0, (c > 0).then_some(code))
            }
        },
        |a, b| (a.0 + b.0, min_opt(a.1, b.1)),
    );
    let witness = rejected.map(|code| {
        let g = ColoredGraph::from_code(n, code);
        format!("# has posets but is not counted as OBTF\n{g}")
    });
    Ok((sum, witness))
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn ratio_line(n: usize, t: Option<&FunctionTally>) -> Result<String> {
    let b = census::b_benchmark(n);
    let f = graphs::obtf_dfs(n)?;
    let bb = graphs::bb_closed_form(n)?;
    let mut line = format!(
        "b = {b}, F/b = {f}/{b} = {:.6}, B/b = {bb}/{b} = {:.6}",
        f as f64 / b as f64,
        bb as f64 / b as f64
    );
    if let Some(t) = t {
        let denom = 1u128 << binom(n + 1, 2);
        line += &format!(
            ", G/2^C(n+1,2) = {}/{denom} = {:.6}",
            t.functions_t1,
            t.functions_t1 as f64 / denom as f64
        );
    }
    Ok(line)
}

/// Structural properties of posets and graphs over the configured range.
pub fn verify_properties(cfg: &Config) -> Result<Report> {
    cfg.check_range()?;
    let mut checks = Vec::new();
    for n in cfg.range() {
        checks.push(property_a(n, cfg.seed)?);
        if n <= litposet::RELATION_SWEEP_MAX {
            let pn = litposet::enumerate_pn_by_relation_sweep(n)?;
            checks.push(round_trip(n, &pn));
            checks.extend(poset_graph_properties(n, &pn, cfg.hooks));
        } else {
            let pn: Vec<LiteralPoset> = litposet::enumerate_pn(n)?.collect();
            checks.push(round_trip(n, &pn));
        }
        checks.extend(graph_pass(n, cfg.hooks)?);
    }
    for m in 1..=cfg.hi + 1 {
        let c = census::posets_per_cover_graph(m)?;
        checks.push(Check::info(
            "cover-multiplicity",
            m,
            format!(
                "{} posets on {m} points, {} cover graphs, at most {} posets share one (e.g. {:?})",
                c.posets,
                c.cover_graphs,
                c.max,
                c.witness
                    .iter()
                    .map(|&(i, j)| (i + 1, j + 1))
                    .collect::<Vec<_>>()
            ),
        ));
    }
    Ok(Report { checks })
}

/// Formulas defining the same elementary function give the same poset.
fn property_a(n: usize, seed: u64) -> Result<Check> {
    let clauses = all_clauses(n);
    let mut seen: HashMap<u64, (LiteralPoset, Formula)> = HashMap::new();
    let mut tested = 0u64;
    let mut failure = None;

    let mut visit = |f: Formula| -> Result<bool> {
        let t = truth_table(&f);
        if !is_elementary(t) {
            return Ok(true);
        }
        tested += 1;
        let p = implication_poset(&f)?;
        match seen.get(&t.bits()) {
            Some((q, g)) if *q != p => {
                failure = Some(format!(
                    "# same function, different posets\n{}# second formula\n{}",
                    render_formula(g),
                    render_formula(&f)
                ));
                Ok(false)
            }
            Some(_) => Ok(true),
            None => {
                seen.insert(t.bits(), (p, f));
                Ok(true)
            }
        }
    };

    let method;
    if n <= 3 {
        method = "all formulas";
        for mask in 0u64..1 << clauses.len() {
            let f = Formula::new(n, crate::census::bits64(mask).map(|k| clauses[k]))?;
            if !visit(f)? {
                break;
            }
        }
    } else {
        method = "sampled formulas";
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let mut found = 0;
        let mut attempts = 0;
        while found < SAMPLES && attempts < 200 * SAMPLES {
            attempts += 1;
            let density = rng.gen_range(0.02..0.25);
            let f = Formula::new(n, clauses.iter().copied().filter(|_| rng.gen_bool(density)))?;
            let t = truth_table(&f);
            if !is_elementary(t) {
                continue;
            }
            found += 1;
            // the same function under two more formulas: padded with implied clauses, and the full implied set
            let implied = implied_formula(t);
            let padded = implied
                .clauses()
                .filter(|_| rng.gen_bool(0.5))
                .fold(f.clone(), |acc, c| {
                    acc.with_clause(c).expect("same variable count")
                });
            if !visit(f)? || !visit(padded)? || !visit(implied)? {
                break;
            }
        }
    }
    let ok = failure.is_none();
    Ok(Check::new(
        "same-function-same-poset",
        n,
        ok,
        format!(
            "{method}: {tested} elementary instances over {} functions",
            seen.len()
        ),
    )
    .witness(failure))
}

/// implication_poset(implied_formula(poset_to_function(P))) = P, and distinct
/// posets give distinct elementary functions.
fn round_trip(n: usize, pn: &[LiteralPoset]) -> Check {
    let mut tables = std::collections::HashSet::new();
    let bad = pn.iter().find(|p| {
        let t = poset_to_function(p);
        tables.insert(t.bits());
        !is_elementary(t) || implication_poset(&implied_formula(t)).ok().as_ref() != Some(*p)
    });
    let injective = bad.is_none() && tables.len() == pn.len();
    Check::new(
        "round-trip",
        n,
        injective,
        format!("{} posets, {} distinct functions", pn.len(), tables.len()),
    )
    .witness(bad.map(|p| p.to_string()))
}

/// Cover colors are consistent, the double cover is the cover graph, and the
/// graph is OBTF, for every poset.
fn poset_graph_properties(n: usize, pn: &[LiteralPoset], hooks: Hooks) -> Vec<Check> {
    let mut conflict = None;
    let mut cover_mismatch = None;
    let mut not_obtf = None;
    for p in pn {
        match cover_coloring(p) {
            Err(_) => {
                conflict.get_or_insert_with(|| p.to_string());
            }
            Ok(g) => {
                if double_cover(&g) != cover_relations(p) {
                    cover_mismatch.get_or_insert_with(|| format!("{p}# its graph\n{g}"));
                }
                if !(hooks.is_obtf)(&g) {
                    not_obtf.get_or_insert_with(|| format!("{p}# its graph\n{g}"));
                }
            }
        }
    }
    let total = pn.len();
    vec![
        Check::new(
            "cover-colors",
            n,
            conflict.is_none(),
            format!("{total} posets color every pair consistently"),
        )
        .witness(conflict),
        Check::new(
            "double-cover",
            n,
            cover_mismatch.is_none(),
            format!("{total} posets: double cover = cover graph"),
        )
        .witness(cover_mismatch),
        Check::new(
            "poset-graph-obtf",
            n,
            not_obtf.is_none(),
            format!("{total} posets have OBTF graphs"),
        )
        .witness(not_obtf),
    ]
}

/// Tallies from one sweep over all colorings on `n` vertices.
#[derive(Debug, Clone, Copy, Default)]
struct GraphStats {
    graphs: u64,
    posets: u64,
    two_graphs: u64,
    exactly_two: u64,
    below_two: u64,
    two_violation: Option<u64>,
    below_two_first: Option<u64>,
    eta_violation: Option<u64>,
    factorial_violation: Option<u64>,
    hook_sum: u64,
    rejected_with_posets: Option<u64>,
    obtf_graphs: u64,
    walk_violation: Option<u64>,
    balance_violation: Option<u64>,
}

impl GraphStats {
    fn merge(self, o: Self) -> Self {
        GraphStats {
            graphs: self.graphs + o.graphs,
            posets: self.posets + o.posets,
            two_graphs: self.two_graphs + o.two_graphs,
            exactly_two: self.exactly_two + o.exactly_two,
            below_two: self.below_two + o.below_two,
            two_violation: min_opt(self.two_violation, o.two_violation),
            below_two_first: min_opt(self.below_two_first, o.below_two_first),
            eta_violation: min_opt(self.eta_violation, o.eta_violation),
            factorial_violation: min_opt(self.factorial_violation, o.factorial_violation),
            hook_sum: self.hook_sum + o.hook_sum,
            rejected_with_posets: min_opt(self.rejected_with_posets, o.rejected_with_posets),
            obtf_graphs: self.obtf_graphs + o.obtf_graphs,
            walk_violation: min_opt(self.walk_violation, o.walk_violation),
            balance_violation: min_opt(self.balance_violation, o.balance_violation),
        }
    }
}

/// Balance witnesses are cross-checked against κ and γ only this far.
const BALANCE_CHECK_MAX: usize = 4;

fn graph_stats(n: usize, code: u64, hooks: Hooks, factorial: u128) -> GraphStats {
    let g = ColoredGraph::from_code(n, code);
    let c = count_posets_of_graph(&g).expect("n within guard");
    let mut s = GraphStats {
        graphs: 1,
        posets: c,
        ..Default::default()
    };
    let classes = eta(&g);
    if c > 1 << classes {
        s.eta_violation = Some(code);
    }
    if (1u128 << classes) > factorial {
        s.factorial_violation = Some(code);
    }
    if g.edge_count() > 0 && is_blue_bipartite(&g) && is_triangle_connected(&g) {
        s.two_graphs = 1;
        match c {
            2 => s.exactly_two = 1,
            0 | 1 => {
                s.below_two = 1;
                s.below_two_first = Some(code);
            }
            _ => s.two_violation = Some(code),
        }
    }
    if (hooks.is_obtf)(&g) {
        s.hook_sum = c;
    } else if c > 0 {
        s.rejected_with_posets = Some(code);
    }
    if cgraph::is_obtf(&g) {
        s.obtf_graphs = 1;
        if check_closed_walks(&g) != Ok(true) {
            s.walk_violation = Some(code);
        }
    }
    if n <= BALANCE_CHECK_MAX {
        let witness = find_blue_bipartition(&g).is_some();
        let k0 = kappa(&g).map(|k| k.size == 0).unwrap_or(!witness);
        let g0 = gamma(&g).map(|k| k.size == 0).unwrap_or(!witness);
        if witness != k0 || witness != g0 {
            s.balance_violation = Some(code);
        }
    }
    s
}

fn graph_pass(n: usize, hooks: Hooks) -> Result<Vec<Check>> {
    let factorial: u128 = (1..=2 * n as u128).product();
    let s = crate::par::range_reduce(
        cgraph::coloring_count(n),
        GraphStats::default,
        |code| graph_stats(n, code, hooks, factorial),
        GraphStats::merge,
    );
    let show = |code: Option<u64>| code.map(|c| ColoredGraph::from_code(n, c).to_string());

    let mut checks = vec![
        Check::new(
            "two-orientations",
            n,
            s.two_violation.is_none(),
            format!(
                "{} blue-bipartite triangle-connected graphs with edges have at most 2 posets",
                s.two_graphs
            ),
        )
        .witness(show(s.two_violation)),
        Check::info(
            "two-orientations-tally",
            n,
            format!(
                "exactly 2 posets: {}, fewer: {}; the edgeless graph has 1{}",
                s.exactly_two,
                s.below_two,
                s.below_two_first
                    .map(|c| format!(
                        "; first with fewer: {}",
                        ColoredGraph::from_code(n, c)
                            .to_string()
                            .replace('\n', " | ")
                    ))
                    .unwrap_or_default()
            ),
        ),
        Check::new(
            "eta-bound",
            n,
            s.eta_violation.is_none() && s.factorial_violation.is_none(),
            format!(
                "|P(G)| <= 2^eta(G) <= (2n)! = {factorial} over {} graphs",
                s.graphs
            ),
        )
        .witness(show(s.eta_violation.or(s.factorial_violation))),
        Check::new(
            "partition",
            n,
            s.rejected_with_posets.is_none() && s.hook_sum == s.posets,
            format!("OBTF graphs carry {} of {} posets", s.hook_sum, s.posets),
        )
        .witness(show(s.rejected_with_posets)),
        Check::new(
            "closed-walks",
            n,
            s.walk_violation.is_none(),
            format!(
                "{} OBTF graphs, closed walks up to length {}",
                s.obtf_graphs,
                cgraph::WALK_MAX_LEN
            ),
        )
        .witness(show(s.walk_violation)),
    ];
    if n <= BALANCE_CHECK_MAX {
        checks.push(
            Check::new(
                "balance",
                n,
                s.balance_violation.is_none(),
                format!(
                    "bipartition found iff kappa = 0 iff gamma = 0 over {} graphs",
                    s.graphs
                ),
            )
            .witness(show(s.balance_violation)),
        );
    }
    Ok(checks)
}

/// Recomputes cached records that fall inside `lo..=hi`. A record without a
/// checksum is refused outright.
pub fn verify_cache(records: &[CensusRecord], lo: usize, hi: usize) -> Result<Report> {
    if let Some(r) = records.iter().find(|r| r.checksum.is_none()) {
        return Err(Error::Cache(format!(
            "cached {}({}) by {} has no checksum; refusing to verify it",
            r.quantity, r.n, r.method
        )));
    }
    let mut checks = Vec::new();
    for r in records.iter().filter(|r| (lo..=hi).contains(&r.n)) {
        let value = census::compute(r.quantity, r.n, r.convention, r.method)?;
        let label = match r.convention {
            Some(c) => format!("{} {} {}", r.quantity, c, r.method),
            None => format!("{} {}", r.quantity, r.method),
        };
        checks.push(Check::new(
            "cache",
            r.n,
            value == r.value,
            format!("{label}: cached {}, recomputed {value}", r.value),
        ));
    }
    Ok(Report { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range_passes() {
        let report = run(&Config::new(1, 3)).unwrap();
        assert!(report.passed(), "{report}");
        for name in [
            "round-trip",
            "cover-colors",
            "double-cover",
            "poset-graph-obtf",
            "two-orientations",
            "partition",
            "bijection",
        ] {
            assert_eq!(
                report.find(name, Some(3)).map(|c| c.status),
                Some(Status::Pass),
                "{name}"
            );
        }
        assert_eq!(
            report.find("chain-t1", Some(2)).map(|c| c.status),
            Some(Status::Info)
        );
        assert!(report.find("ratios", Some(6)).is_some());
    }

    #[test]
    fn documented_values_show_up() {
        let report = verify_identities(&Config::new(2, 3)).unwrap();
        let eq2 = report.find("lower-bound-t1", Some(2)).unwrap();
        assert!(
            eq2.detail.contains("15 > 2^n (2^C(n,2) - 1) = 4"),
            "{}",
            eq2.detail
        );
        assert!(report
            .find("ratios", Some(3))
            .unwrap()
            .detail
            .contains("F/b = 23/32"));
        assert!(report
            .find("bijection", Some(2))
            .unwrap()
            .detail
            .contains("= 5, H t0 = 5"));
    }

    #[test]
    fn inverted_obtf_is_caught_with_a_witness() {
        let cfg = Config {
            hooks: Hooks::obtf_inverted(),
            ..Config::new(2, 3)
        };
        let report = run(&cfg).unwrap();
        assert!(!report.passed());
        for name in ["bijection", "partition", "poset-graph-obtf", "engine-F"] {
            let c = report.find(name, Some(3)).unwrap();
            assert_eq!(c.status, Status::Fail, "{name}");
        }
        let w = report
            .find("partition", Some(3))
            .unwrap()
            .witness
            .clone()
            .unwrap();
        assert!(crate::text::parse_graph(&w).is_ok(), "{w}");
    }

    #[test]
    fn range_guards() {
        assert!(Config::new(1, 5).check_range().is_err());
        assert!(Config {
            big: true,
            ..Config::new(1, 5)
        }
        .check_range()
        .is_ok());
        assert!(Config {
            big: true,
            ..Config::new(1, 6)
        }
        .check_range()
        .is_err());
        assert!(Config::new(0, 2).check_range().is_err());
        assert!(Config::new(3, 2).check_range().is_err());
    }

    #[test]
    fn cache_records_are_recomputed() {
        let good = census::count_obtf(3).unwrap();
        let report = verify_cache(std::slice::from_ref(&good), 1, 3).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 1);

        let mut lie = good.clone();
        lie.value = 24;
        lie.checksum = Some(lie.expected_checksum());
        assert!(!verify_cache(&[lie], 1, 3).unwrap().passed());

        let mut bare = good;
        bare.checksum = None;
        assert!(matches!(verify_cache(&[bare], 1, 3), Err(Error::Cache(_))));
    }

    #[test]
    fn zero_variable_tally_is_constant_true() {
        let t = tally(0).unwrap();
        assert_eq!(pick(&t, Convention::T0), (1, 1));
        assert_eq!(pick(&t, Convention::T1), (0, 0));
    }
}
