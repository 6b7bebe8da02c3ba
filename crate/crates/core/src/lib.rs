//! Exact values of `R(C_m, B_n^(k))` for long even cycles `C_m` versus books,
//! together with extremal witness graphs and the checkers that certify them.
//!
//! * [`formula`] evaluates the closed forms and the recursive case.
//! * [`constructions`] builds lower-bound witnesses on `g - 1` vertices.
//! * [`verify`] certifies witnesses: no `C_m`, no independent `k`-set whose
//!   common non-neighbourhood has `n - 1` or more vertices.
//! * [`setfamily`] covers the duplication bounds for set families.
//! * [`oracle`] computes tiny Ramsey numbers by exhaustive search.

pub mod bits;
pub mod constructions;
pub mod error;
pub mod formula;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod setfamily;
pub mod verify;

pub use bits::Bits;
pub use error::{Error, Result};
pub use formula::{gk, predict, validate, CaseTag, ParamContext, Prediction};
pub use graph::{clique, disjoint_union, Graph, Vertex};
