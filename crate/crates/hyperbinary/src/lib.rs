//! Hyperbinary expansion graphs.
//!
//! A hyperbinary expansion of n writes n as a sum of powers of two, each
//! power used at most twice. The expansions of a fixed n form an
//! edge-coloured, vertex-weighted DAG A(n) under the rewrite rules
//! 02→10 and 12→20; this crate builds those graphs, classifies the
//! integers whose graph is a tree or has a free fundamental group of
//! rank one, and re-verifies every structural law by brute force.

pub mod dot;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod rewrite;
pub mod verify;

pub use error::{Error, Result};
pub use expansion::{
    binary_expansion, count_expansions, enumerate_expansions, minimal_expansion, normalize,
    shortlex_compare, stern, CountTable, Expansion, LengthClass,
};
pub use graph::{
    build_graph, classify, color_iso, cyclomatic_number, double_plus_one_map, even_split,
    long_count, long_subgraph, Classification, HyperGraph, Pi1, TreeParams,
};
pub use rewrite::{children, parents, ArcColor, RewriteStep, StepChoice};
pub use verify::{oracle_expansions, proposition_ids, verify_all, VerificationReport, VerifyConfig};
