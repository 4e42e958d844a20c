//! Exact counts and their persistent records.
//!
//! | quantity | meaning                                   | methods                           |
//! |----------|-------------------------------------------|-----------------------------------|
//! | `G`      | distinct 2-SAT functions                  | `formula-sweep`, `closure-enum`   |
//! | `H`      | elementary 2-SAT functions                | `formula-sweep`, `closure-enum`   |
//! | `Pn`     | literal posets                            | `orientation-sweep`, `relation-sweep` |
//! | `F`      | OBTF colored graphs                       | `flat-sweep`, `pruned-dfs`        |
//! | `B`      | blue-bipartite colored graphs             | `flat-sweep`, `closed-form`       |

pub mod cache;
pub mod covers;
pub mod functions;
pub mod graphs;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use covers::{posets_per_cover_graph, CoverMultiplicity};
pub use functions::FunctionTally;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quantity {
    G,
    H,
    Pn,
    F,
    B,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::G,
        Quantity::H,
        Quantity::Pn,
        Quantity::F,
        Quantity::B,
    ];

    pub fn takes_convention(self) -> bool {
        matches!(self, Quantity::G | Quantity::H)
    }

    pub fn methods(self) -> [Method; 2] {
        match self {
            Quantity::G | Quantity::H => [Method::ClosureEnum, Method::FormulaSweep],
            Quantity::Pn => [Method::OrientationSweep, Method::RelationSweep],
            Quantity::F => [Method::PrunedDfs, Method::FlatSweep],
            Quantity::B => [Method::ClosedForm, Method::FlatSweep],
        }
    }

    /// The engine used unless another is requested.
    pub fn fast_method(self) -> Method {
        self.methods()[0]
    }

    /// The flat-sweep style method the fast one is checked against.
    pub fn oracle_method(self) -> Method {
        self.methods()[1]
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::G => "G",
            Quantity::H => "H",
            Quantity::Pn => "Pn",
            Quantity::F => "F",
            Quantity::B => "B",
        })
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown quantity {s:?} (expected G, H, Pn, F or B)"))
    }
}

/// Whether the clause-free formula (constant True) is admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// At least one clause.
    #[serde(rename = "t1")]
    T1,
    /// Empty formula allowed.
    #[serde(rename = "t0")]
    T0,
}

impl Convention {
    pub fn allow_empty(self) -> bool {
        self == Convention::T0
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::T1 => "t1",
            Convention::T0 => "t0",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FormulaSweep,
    ClosureEnum,
    OrientationSweep,
    RelationSweep,
    FlatSweep,
    PrunedDfs,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variants serialize");
        f.write_str(s.as_str().expect("unit variants serialize as strings"))
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| format!("unknown method {s:?}"))
    }
}

/// Largest `n` each (quantity, method) engine accepts.
pub fn method_limit(q: Quantity, m: Method) -> Option<usize> {
    use Method::*;
    match (q, m) {
        (Quantity::G | Quantity::H, FormulaSweep) => Some(functions::FORMULA_SWEEP_MAX),
        (Quantity::G | Quantity::H, ClosureEnum) => Some(functions::CLOSURE_ENUM_MAX),
        (Quantity::Pn, OrientationSweep) => Some(graphs::ORIENTATION_SWEEP_MAX),
        (Quantity::Pn, RelationSweep) => Some(crate::litposet::RELATION_SWEEP_MAX),
        (Quantity::F, FlatSweep) | (Quantity::B, FlatSweep) => Some(graphs::FLAT_SWEEP_MAX),
        (Quantity::F, PrunedDfs) => Some(graphs::OBTF_DFS_MAX),
        (Quantity::B, ClosedForm) => Some(graphs::CLOSED_FORM_MAX),
        _ => None,
    }
}

/// One exact count. `checksum` is absent only in hand-written or foreign cache lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub quantity: Quantity,
    pub n: usize,
    pub convention: Option<Convention>,
    pub value: u64,
    pub method: Method,
    pub wall_time: f64,
    #[serde(default)]
    pub checksum: Option<String>,
}

/// Tag for the enumeration order every engine follows.
const ORDER_TAG: &str = "colex-v1";

impl CensusRecord {
    fn key_string(&self) -> String {
        format!(
            "quantity={};n={};convention={};method={};order={};value={}",
            self.quantity,
            self.n,
            self.convention.map_or("-".to_string(), |c| c.to_string()),
            self.method,
            ORDER_TAG,
            self.value
        )
    }

    pub fn expected_checksum(&self) -> String {
        hex::encode(Sha256::digest(self.key_string().as_bytes()))
    }

    /// `None` if there is no checksum, otherwise whether it matches the fields.
    pub fn checksum_ok(&self) -> Option<bool> {
        self.checksum
            .as_ref()
            .map(|c| *c == self.expected_checksum())
    }

    pub fn same_count(
        &self,
        q: Quantity,
        n: usize,
        conv: Option<Convention>,
        method: Method,
    ) -> bool {
        self.quantity == q && self.n == n && self.convention == conv && self.method == method
    }

    /// JSON line with `wall_time` zeroed: the part of a record that must be
    /// identical across runs and worker counts.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time = 0.0;
        serde_json::to_string(&r).expect("records serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

pub(crate) fn bits64(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

/// Computes one census value with the given method.
pub fn compute(
    q: Quantity,
    n: usize,
    convention: Option<Convention>,
    method: Method,
) -> Result<u64> {
    use Method::*;
    if q.takes_convention() != convention.is_some() {
        return Err(Error::Precondition(if q.takes_convention() {
            "G and H need a convention"
        } else {
            "only G and H take a convention"
        }));
    }
    let pick = |t: FunctionTally| match (q, convention) {
        (Quantity::G, Some(Convention::T1)) => t.functions_t1,
        (Quantity::G, _) => t.functions_t0,
        (_, Some(Convention::T1)) => t.elementary_t1,
        _ => t.elementary_t0,
    };
    match (q, method) {
        (Quantity::G | Quantity::H, FormulaSweep) => functions::formula_sweep(n).map(pick),
        (Quantity::G | Quantity::H, ClosureEnum) => functions::closure_enum(n).map(pick),
        (Quantity::Pn, OrientationSweep) => graphs::pn_orientation_sweep(n),
        (Quantity::Pn, RelationSweep) => graphs::pn_relation_sweep(n),
        (Quantity::F, FlatSweep) => graphs::obtf_flat(n),
        (Quantity::F, PrunedDfs) => graphs::obtf_dfs(n),
        (Quantity::B, FlatSweep) => graphs::bb_flat(n),
        (Quantity::B, ClosedForm) => graphs::bb_closed_form(n),
        _ => Err(Error::Precondition(
            "method does not apply to this quantity",
        )),
    }
}

/// Runs an engine and wraps the value in a checksummed record.
pub fn run(
    q: Quantity,
    n: usize,
    convention: Option<Convention>,
    method: Method,
) -> Result<CensusRecord> {
    let start = Instant::now();
    let value = compute(q, n, convention, method)?;
    let mut record = CensusRecord {
        quantity: q,
        n,
        convention,
        value,
        method,
        wall_time: start.elapsed().as_secs_f64(),
        checksum: None,
    };
    record.checksum = Some(record.expected_checksum());
    Ok(record)
}

pub fn count_functions(n: usize, allow_empty: bool) -> Result<CensusRecord> {
    run(
        Quantity::G,
        n,
        Some(convention(allow_empty)),
        Method::ClosureEnum,
    )
}

pub fn count_elementary(n: usize, allow_empty: bool) -> Result<CensusRecord> {
    run(
        Quantity::H,
        n,
        Some(convention(allow_empty)),
        Method::ClosureEnum,
    )
}

pub fn count_pn(n: usize) -> Result<CensusRecord> {
    run(Quantity::Pn, n, None, Method::OrientationSweep)
}

pub fn count_obtf(n: usize) -> Result<CensusRecord> {
    run(Quantity::F, n, None, Method::PrunedDfs)
}

pub fn count_bb(n: usize) -> Result<CensusRecord> {
    run(Quantity::B, n, None, Method::ClosedForm)
}

fn convention(allow_empty: bool) -> Convention {
    if allow_empty {
        Convention::T0
    } else {
        Convention::T1
    }
}

/// `2^(C(n+1,2) - 1)`, the asymptotic size of both `B(n)` and `F(n)`.
pub fn b_benchmark(n: usize) -> u128 {
    1u128 << (n * (n + 1) / 2 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_examples() {
        assert_eq!(count_functions(2, false).unwrap().value, 15);
        assert_eq!(count_functions(2, true).unwrap().value, 16);
        assert_eq!(count_functions(1, false).unwrap().value, 0);
        assert_eq!(count_elementary(2, false).unwrap().value, 4);
        assert_eq!(count_elementary(2, true).unwrap().value, 5);
        assert_eq!(count_elementary(1, true).unwrap().value, 1);
        assert_eq!(count_pn(1).unwrap().value, 1);
        assert_eq!(count_pn(2).unwrap().value, 5);
        assert_eq!(count_obtf(2).unwrap().value, 3);
        assert_eq!(count_obtf(3).unwrap().value, 23);
        assert_eq!(count_bb(2).unwrap().value, 3);
        assert_eq!(count_bb(3).unwrap().value, 23);
        assert_eq!(b_benchmark(3), 32);
    }

    #[test]
    fn conventions_differ_by_constant_true() {
        for n in 2..=4 {
            let t = functions::closure_enum(n).unwrap();
            assert_eq!(t.functions_t0, t.functions_t1 + 1);
            assert_eq!(t.elementary_t0, t.elementary_t1 + 1);
        }
    }

    #[test]
    fn checksums_are_stable_and_detect_edits() {
        let r = count_obtf(3).unwrap();
        assert_eq!(r.checksum_ok(), Some(true));
        let again = count_obtf(3).unwrap();
        assert_eq!(r.canonical_json(), again.canonical_json());
        let mut bad = r.clone();
        bad.value += 1;
        assert_eq!(bad.checksum_ok(), Some(false));
        bad.checksum = None;
        assert_eq!(bad.checksum_ok(), None);
    }

    #[test]
    fn record_json_shape() {
        let r = count_functions(2, true).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        for k in [
            "quantity",
            "n",
            "convention",
            "value",
            "method",
            "wall_time",
            "checksum",
        ] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["convention"], "t0");
        assert_eq!(v["method"], "closure-enum");
        let back: CensusRecord = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn method_names_round_trip() {
        for q in Quantity::ALL {
            for m in q.methods() {
                assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
                assert!(method_limit(q, m).is_some());
            }
            assert_eq!(q.to_string().parse::<Quantity>().unwrap(), q);
        }
    }

    #[test]
    fn convention_is_checked() {
        assert!(compute(Quantity::F, 2, Some(Convention::T0), Method::PrunedDfs).is_err());
        assert!(compute(Quantity::G, 2, None, Method::ClosureEnum).is_err());
        assert!(compute(Quantity::F, 2, None, Method::ClosedForm).is_err());
    }
}
