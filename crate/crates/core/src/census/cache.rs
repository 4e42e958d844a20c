//! Append-only JSON-lines store of [`CensusRecord`]s.

use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use super::{CensusRecord, Convention, Method, Quantity};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

/// Result of looking a count up in the cache.
#[derive(Debug, Clone, PartialEq)]
pub enum Lookup {
    Hit(CensusRecord),
    /// A matching line exists but carries no checksum.
    Unchecked(CensusRecord),
    Miss,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records; a missing file is an empty cache. Unparseable lines and
    /// checksum mismatches are corruption.
    pub fn load(&self) -> Result<Vec<CensusRecord>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", self.path.display()))),
        };
        let mut out = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let r: CensusRecord = serde_json::from_str(line)
                .map_err(|e| Error::Cache(format!("{}:{}: {e}", self.path.display(), k + 1)))?;
            if r.checksum_ok() == Some(false) {
                return Err(Error::Cache(format!(
                    "{}:{}: checksum mismatch for {}({})",
                    self.path.display(),
                    k + 1,
                    r.quantity,
                    r.n
                )));
            }
            out.push(r);
        }
        Ok(out)
    }

    /// The last matching record.
    pub fn lookup(
        &self,
        q: Quantity,
        n: usize,
        conv: Option<Convention>,
        method: Method,
    ) -> Result<Lookup> {
        let found = self
            .load()?
            .into_iter()
            .rev()
            .find(|r| r.same_count(q, n, conv, method));
        Ok(match found {
            Some(r) if r.checksum.is_some() => Lookup::Hit(r),
            Some(r) => Lookup::Unchecked(r),
            None => Lookup::Miss,
        })
    }

    pub fn append(&self, record: &CensusRecord) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::Cache(format!("{}: {e}", self.path.display())))?;
        writeln!(f, "{}", record.to_json())
            .map_err(|e| Error::Cache(format!("{}: {e}", self.path.display())))
    }
}
