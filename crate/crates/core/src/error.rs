use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    InvalidVertex { vertex: usize, order: usize },

    #[error("identifying adjacent vertices {a} and {b} would create a self-loop")]
    SelfLoopCreated { a: usize, b: usize },

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("cycle length m = {0} is odd; only even cycle lengths are covered")]
    OddCycleLength(i64),

    #[error("computed ell = {ell} at k = {k} lies outside [{lo}, {hi}]")]
    EllOutOfRange { k: i64, ell: i64, lo: i64, hi: i64 },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("cannot attach {attached} petals to a center clique of size {center}")]
    AttachOverflow { attached: usize, center: usize },

    #[error("no witness assembly found: {reason}")]
    InfeasibleAssembly {
        reason: String,
        attempts: Vec<String>,
    },

    #[error("block {block:?} does not induce a clique")]
    NotBlockClique { block: Vec<usize> },

    #[error("graph has no independent set of size {0}")]
    NoIndependentSet(usize),

    #[error("search budget exhausted: {0}")]
    ResourceLimit(String),

    #[error("set family is empty")]
    EmptyFamily,

    #[error("parse error: {0}")]
    Parse(String),
}
