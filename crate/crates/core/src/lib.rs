//! Deterministic vertex-connectivity algorithms.
//!
//! The exact path decides `κ(G) ≥ k` by repeatedly shrinking a terminal set
//! with sparse-cut recursion ([`reduction`]) and catching unbalanced cuts with
//! splitter families and isolating cuts ([`unbalanced`], [`isolating`]). The
//! approximate path ([`approx`]) runs pair flows chosen by certified expanders
//! ([`expander`]). All flow work is counted by a [`FlowLedger`].

pub mod approx;
pub mod bench;
pub mod error;
pub mod expander;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod hashing;
pub mod io;
pub mod isolating;
pub mod oracles;
pub mod reduction;
pub mod unbalanced;

pub use error::{Error, Result};
pub use flow::{kappa_pair, min_vertex_separator, FlowLedger, LedgerSnapshot, SeparatorResult};
pub use graph::{Graph, TerminalSet, VertexCut};
pub use approx::{approx_vertex_mincut, ApproxOutcome};
pub use expander::{build_mixing_graph, build_small_set_expander, spectral_lambda2, CertifiedExpander};
pub use io::{parse_graph, parse_terminals, GraphFormat, ParseOptions};
pub use oracles::{brute_force_kappa, brute_force_steiner_kappa, kappa_baseline_allpairs};
pub use reduction::finder::{BruteSparse, HeuristicSparse, SparseCutFinder, SparseCutResult};
pub use reduction::{
    check_k_connectivity, reduce_terminal_slow, DriverStats, KConnOutcome, ReductionOutcome, ReductionParams,
    ReductionStats,
};
pub use unbalanced::{unbalanced, UnbalancedResult};
