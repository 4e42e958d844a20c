use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("trivial function: spine undefined")]
    Trivial,

    #[error("P_F defined only for elementary functions")]
    NotElementary,

    #[error("clause literals must belong to different variables (variable {0})")]
    SameVariable(usize),

    #[error("variable {var} out of range for n = {n}")]
    VariableOutOfRange { var: usize, n: usize },

    #[error("{what}: n = {n} exceeds the limit of {max}")]
    Guard {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("pair w{} w{} would be colored both red and blue", .0 + 1, .1 + 1)]
    ColorConflict(usize, usize),

    #[error("relation is not a member of P(n): {0}")]
    NotPoset(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(&'static str),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("cache: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn guard(what: &'static str, n: usize, max: usize) -> Self {
        Error::Guard { what, n, max }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
