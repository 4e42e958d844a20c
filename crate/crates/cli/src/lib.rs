//! The `obtf` command line: census runs with a persistent cache, the
//! verification suite, single-graph analysis and literal-poset utilities.
//!
//! [`run`] takes the argument list and two output streams and returns the
//! process exit status, so everything here can be driven from tests.

mod analyze;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use obtf_core::census::cache::{Cache, Lookup};
use obtf_core::census::{self, CensusRecord, Convention, Method, Quantity};
use obtf_core::{par, verify, Error};

pub use analyze::{analyze, Analysis};

/// Exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const ENVIRONMENT: i32 = 3;
}

pub const DEFAULT_CACHE: &str = "obtf-cache.jsonl";
/// Counts at or beyond this `n` need `--big`.
pub const BIG_FROM: usize = 7;

#[derive(Parser, Debug)]
#[command(
    name = "obtf",
    version,
    about = "Exact censuses of 2-SAT functions, literal posets and colored graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute exact counts, reusing cached values.
    Census(CensusArgs),
    /// Run the identity and property suites.
    Verify(VerifyArgs),
    /// Analyze one colored graph file.
    Analyze(AnalyzeArgs),
    /// List or convert literal posets.
    Posets(PosetsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    T0,
    T1,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::T0 => Convention::T0,
            ConventionArg::T1 => Convention::T1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mutant {
    /// `is_obtf` returns the negation of the truth.
    ObtfInverted,
}

/// `a` or `a..b`, both ends inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad number {t:?} in range {s:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Range { lo, hi })
    }
}

#[derive(Args, Debug, Clone)]
pub struct CacheArgs {
    /// JSON-lines cache file.
    #[arg(long, env = "OBTF_CACHE", default_value = DEFAULT_CACHE)]
    pub cache: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CensusArgs {
    /// G, H, Pn, F or B; comma separated for several.
    #[arg(long, short, value_delimiter = ',', required = true)]
    pub quantity: Vec<Quantity>,
    /// A single n or an inclusive range `a..b`.
    #[arg(long, short, visible_alias = "range")]
    pub n: Range,
    /// Convention for G and H; comma separated for both.
    #[arg(long, short, value_enum, value_delimiter = ',', default_value = "t1")]
    pub convention: Vec<ConventionArg>,
    /// Engine to use instead of the default fast one.
    #[arg(long, short)]
    pub method: Option<Method>,
    #[arg(long, short)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub cache: CacheArgs,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Allow n >= 7.
    #[arg(long)]
    pub big: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, short, visible_alias = "n", default_value = "1..3")]
    pub range: Range,
    /// Allow n = 5.
    #[arg(long)]
    pub big: bool,
    /// Seed for sampled properties.
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, short)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub cache: CacheArgs,
    /// `table` or `json`.
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long, value_enum, hide = true)]
    pub inject_mutant: Option<Mutant>,
}

#[derive(Args, Debug, Clone)]
pub struct AnalyzeArgs {
    /// Colored graph file (`n <int>` header, then `u v R|B` lines).
    pub path: PathBuf,
    /// `table` or `json`.
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct PosetSource {
    /// List every literal poset on n variables.
    #[arg(long, short)]
    pub n: Option<usize>,
    /// The poset of the elementary function defined by a formula file.
    #[arg(long)]
    pub formula: Option<PathBuf>,
    /// The function and graph of a poset file.
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Largest number of posets on m points sharing one cover graph.
    #[arg(long)]
    pub cover_multiplicity: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct PosetsArgs {
    #[command(flatten)]
    pub source: PosetSource,
    /// Allow listing at n = 5.
    #[arg(long)]
    pub big: bool,
    /// `table` or `json`.
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    fn environment(message: impl Into<String>) -> Self {
        Failure {
            code: exit::ENVIRONMENT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Cache(_) => exit::ENVIRONMENT,
            Error::Invariant(_) => exit::VERIFY_FAILED,
            _ => exit::USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::environment(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Census(a) => with_workers(a.workers, |out| cmd_census(&a, out), out),
        Command::Verify(a) => with_workers(a.workers, |out| cmd_verify(&a, out), out),
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Posets(a) => cmd_posets(&a, out),
    }
}

fn with_workers(
    workers: Option<usize>,
    f: impl FnOnce(&mut Vec<u8>) -> Outcome + Send,
    out: &mut dyn Write,
) -> Outcome {
    // buffered so the closure can move to the pool's thread
    let mut buf = Vec::new();
    let result = match workers {
        Some(0) => return Err(Failure::usage("--workers must be at least 1")),
        Some(w) => par::with_workers(w, || f(&mut buf)),
        None => f(&mut buf),
    };
    out.write_all(&buf)?;
    result
}

/// Where a printed record came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Computed,
    Cached,
}

/// Computes or looks up every requested count, appending new ones to the cache.
pub fn census_records(a: &CensusArgs) -> Result<Vec<(CensusRecord, Source)>, Failure> {
    if a.n.hi >= BIG_FROM && !a.big {
        return Err(Failure::usage(format!(
            "n = {} needs --big (counts from n = {BIG_FROM} on are long runs)",
            a.n.hi
        )));
    }
    let cache = (!a.cache.no_cache).then(|| Cache::new(&a.cache.cache));
    if let Some(c) = &cache {
        c.load()?;
    }
    let mut jobs = Vec::new();
    for &q in &a.quantity {
        let method = a.method.unwrap_or(q.fast_method());
        let limit = census::method_limit(q, method)
            .ok_or_else(|| Failure::usage(format!("method {method} does not compute {q}")))?;
        if a.n.hi > limit {
            return Err(Failure::usage(format!(
                "{q} by {method} is limited to n <= {limit}"
            )));
        }
        let conventions: Vec<Option<Convention>> = if q.takes_convention() {
            a.convention.iter().map(|&c| Some(c.into())).collect()
        } else {
            vec![None]
        };
        for n in a.n.lo..=a.n.hi {
            for &conv in &conventions {
                jobs.push((q, n, conv, method));
            }
        }
    }
    let mut records = Vec::new();
    for (q, n, conv, method) in jobs {
        if let Some(c) = &cache {
            if let Lookup::Hit(r) = c.lookup(q, n, conv, method)? {
                records.push((r, Source::Cached));
                continue;
            }
        }
        let r = census::run(q, n, conv, method)?;
        if let Some(c) = &cache {
            c.append(&r)?;
        }
        records.push((r, Source::Computed));
    }
    Ok(records)
}

fn cmd_census(a: &CensusArgs, out: &mut dyn Write) -> Outcome {
    let records = census_records(a)?;
    match a.format {
        Format::Json => {
            for (r, _) in &records {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "quantity",
                "n",
                "convention",
                "value",
                "method",
                "wall_time",
                "checksum",
            ])
            .map_err(csv_failure)?;
            for (r, _) in &records {
                w.write_record([
                    r.quantity.to_string(),
                    r.n.to_string(),
                    r.convention.map(|c| c.to_string()).unwrap_or_default(),
                    r.value.to_string(),
                    r.method.to_string(),
                    r.wall_time.to_string(),
                    r.checksum.clone().unwrap_or_default(),
                ])
                .map_err(csv_failure)?;
            }
            w.flush()?;
        }
        Format::Table => {
            let rows: Vec<[String; 6]> = records
                .iter()
                .map(|(r, _)| {
                    [
                        r.quantity.to_string(),
                        r.n.to_string(),
                        r.convention
                            .map(|c| c.to_string())
                            .unwrap_or_else(|| "-".into()),
                        r.method.to_string(),
                        r.value.to_string(),
                        format!("{:.3}", r.wall_time),
                    ]
                })
                .collect();
            write_table(
                out,
                &["quantity", "n", "conv", "method", "value", "seconds"],
                &rows,
            )?;
        }
    }
    Ok(exit::OK)
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::environment(e.to_string())
}

fn write_table<const K: usize>(
    out: &mut dyn Write,
    header: &[&str; K],
    rows: &[[String; K]],
) -> std::io::Result<()> {
    let mut widths = header.map(str::len);
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let cfg = verify::Config {
        lo: a.range.lo,
        hi: a.range.hi,
        big: a.big,
        seed: a.seed,
        hooks: match a.inject_mutant {
            Some(Mutant::ObtfInverted) => verify::Hooks::obtf_inverted(),
            None => verify::Hooks::default(),
        },
    };
    cfg.check_range()?;
    let mut report = verify::Report::default();
    if !a.cache.no_cache {
        let records = Cache::new(&a.cache.cache).load()?;
        report.extend(verify::verify_cache(&records, cfg.lo, cfg.hi)?);
    }
    report.extend(verify::run(&cfg)?);
    match a.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("reports serialize")
        )?,
        Format::Table => writeln!(out, "{report}")?,
        Format::Csv => return Err(Failure::usage("verify prints table or json")),
    }
    Ok(if report.passed() {
        exit::OK
    } else {
        exit::VERIFY_FAILED
    })
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let f = Failure::from(e);
        Failure {
            message: format!("{}: {}", path.display(), f.message),
            ..f
        }
    }
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Outcome {
    let text = read_input(&a.path)?;
    let g = obtf_core::text::parse_graph(&text).map_err(in_file(&a.path))?;
    let report = analyze(&g);
    match a.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("analyses serialize")
        )?,
        Format::Table => write!(out, "{report}")?,
        Format::Csv => return Err(Failure::usage("analyze prints table or json")),
    }
    Ok(exit::OK)
}

/// Largest `n` for `posets --n` without `--big`.
pub const POSET_LIST_MAX: usize = 4;

fn cmd_posets(a: &PosetsArgs, out: &mut dyn Write) -> Outcome {
    use obtf_core::boolfn::{implied_formula, truth_table};
    use obtf_core::cgraph::graph_of_poset;
    use obtf_core::litposet::{enumerate_pn, implication_poset, poset_to_function};
    use obtf_core::text::{parse_formula, parse_poset, render_formula};

    let json = match a.format {
        Format::Table => false,
        Format::Json => true,
        Format::Csv => return Err(Failure::usage("posets prints table or json")),
    };
    let s = &a.source;
    if let Some(n) = s.n {
        if n > POSET_LIST_MAX && !a.big {
            return Err(Failure::usage(format!(
                "listing posets at n = {n} needs --big"
            )));
        }
        let mut count = 0u64;
        for p in enumerate_pn(n)? {
            count += 1;
            if json {
                writeln!(out, "{}", serde_json::json!({ "poset": p.to_string() }))?;
            } else {
                writeln!(out, "{p}")?;
            }
        }
        if !json {
            writeln!(out, "# {count} literal posets on {n} variables")?;
        }
    } else if let Some(path) = &s.formula {
        let f = parse_formula(&read_input(path)?).map_err(in_file(path))?;
        let p = implication_poset(&f).map_err(in_file(path))?;
        let g = graph_of_poset(&p)?;
        let t = truth_table(&f);
        if json {
            let v = serde_json::json!({ "assignments": t.len(), "poset": p.to_string(), "graph": g.to_string() });
            writeln!(out, "{v}")?;
        } else {
            writeln!(
                out,
                "# {} satisfying assignments\n# poset\n{p}\n# graph\n{g}",
                t.len()
            )?;
        }
    } else if let Some(path) = &s.poset {
        let p = parse_poset(&read_input(path)?).map_err(in_file(path))?;
        let t = poset_to_function(&p);
        let f = implied_formula(t);
        let g = graph_of_poset(&p)?;
        if json {
            let v = serde_json::json!({ "assignments": t.len(), "formula": render_formula(&f), "graph": g.to_string() });
            writeln!(out, "{v}")?;
        } else {
            write!(
                out,
                "# {} satisfying assignments\n# formula\n{}\n# graph\n{g}",
                t.len(),
                render_formula(&f)
            )?;
        }
    } else if let Some(m) = s.cover_multiplicity {
        let c = census::posets_per_cover_graph(m)?;
        if json {
            writeln!(out, "{}", serde_json::to_string(&c).expect("serializes"))?;
        } else {
            let witness: Vec<String> = c
                .witness
                .iter()
                .map(|(i, j)| format!("{}-{}", i + 1, j + 1))
                .collect();
            writeln!(out, "points        {}", c.m)?;
            writeln!(out, "posets        {}", c.posets)?;
            writeln!(out, "cover graphs  {}", c.cover_graphs)?;
            writeln!(out, "max sharing   {}", c.max)?;
            writeln!(
                out,
                "witness       {}",
                if witness.is_empty() {
                    "(no edges)".into()
                } else {
                    witness.join(" ")
                }
            )?;
        }
    }
    Ok(exit::OK)
}
