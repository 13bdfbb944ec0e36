//! `(1+ε)`-approximate vertex connectivity from `O(n/ε²)` pair flows.
//!
//! Two expanders on the vertex ids of `G` pick the pairs. A mixing graph
//! `H₁` has an edge between any two large disjoint sets, and a small-set
//! vertex expander `H₂` lets every small set see more than `κ` vertices. For a
//! minimum cut `(L, S, R)` with `δ ≥ (1+ε)κ` one of them therefore has an edge
//! from `L` to `R`, and the flow for that pair finds a minimum separator.
//! Otherwise the neighbourhood of a minimum-degree vertex is good enough.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expander::{build_mixing_graph, build_small_set_expander, CertifiedExpander, SmallSetExpander};
use crate::flow::{min_vertex_separator, FlowLedger, SeparatorResult};
use crate::graph::{min_degree_vertex, Graph, VertexCut};

/// Starting degree of the mixing graph.
const MIXING_START_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxStats {
    pub mixing_degree: usize,
    pub mixing_lambda2: f64,
    /// `None` when `n < 2/ε` and the mixing graph is complete.
    pub small_set_alpha: Option<f64>,
    pub small_set_beta: Option<f64>,
    pub mixing_edges: usize,
    pub small_set_edges: usize,
    /// Pairs of `H₁ ∪ H₂` that are nonadjacent in `G`; one flow each.
    pub flow_calls: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ApproxOutcome {
    Separator {
        separator: Vec<usize>,
        /// The neighbourhood of a minimum-degree vertex beat every flow.
        from_min_degree: bool,
        stats: ApproxStats,
    },
    /// `G` is complete; no separator exists.
    Complete { kappa: usize },
    Disconnected,
}

impl ApproxOutcome {
    pub fn separator(&self) -> Option<&[usize]> {
        match self {
            ApproxOutcome::Separator { separator, .. } => Some(separator),
            _ => None,
        }
    }
}

/// The pair-selection graphs for `n` vertices and accuracy `ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairExpanders {
    pub mixing: CertifiedExpander,
    pub small_set: Option<SmallSetExpander>,
}

impl PairExpanders {
    /// Builds `H₂`, then raises the degree of `H₁` until it covers every cut
    /// whose sides are both larger than `H₂` can handle.
    pub fn build(n: usize, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidArgument(format!("need 0 < eps <= 1, got {eps}")));
        }
        if n < 2 {
            return Err(Error::InvalidArgument("need at least 2 vertices".into()));
        }
        let small_set = if (n as f64) >= 2.0 / eps {
            Some(build_small_set_expander(n, eps)?)
        } else {
            None
        };
        // Sides of at least this size must be joined by an H₁ edge.
        let large = match &small_set {
            Some(s) => (s.alpha * n as f64).floor() as usize + 1,
            None => 1,
        };
        let covers = |x: &CertifiedExpander| 2 * large > n || x.mixing_guarantees_edge(large, large);
        let mut degree = MIXING_START_DEGREE;
        let mixing = loop {
            if degree + 1 >= n {
                break CertifiedExpander::complete_graph(n)?;
            }
            let x = build_mixing_graph(n, degree)?;
            if covers(&x) {
                break x;
            }
            degree *= 2;
        };
        Ok(Self { mixing, small_set })
    }

    /// Sorted union of the edge sets.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self.mixing.graph.edges().collect();
        if let Some(s) = &self.small_set {
            pairs.extend(s.expander.graph.edges());
        }
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

/// A vertex cut of size at most `⌊(1+ε)κ⌋`.
pub fn approx_vertex_mincut(g: &Graph, eps: f64, ledger: &FlowLedger) -> Result<ApproxOutcome> {
    let n = g.n();
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidArgument(format!("need 0 < eps <= 1, got {eps}")));
    }
    if n == 0 || !g.is_connected() {
        return Ok(ApproxOutcome::Disconnected);
    }
    if g.is_complete() {
        return Ok(ApproxOutcome::Complete { kappa: n - 1 });
    }
    let hs = PairExpanders::build(n, eps)?;
    let (v, delta) = min_degree_vertex(g);
    let mut best: Option<Vec<usize>> = None;
    let mut flow_calls = 0;
    for (s, t) in hs.pairs() {
        if g.has_edge(s, t) {
            continue;
        }
        let cap = best.as_ref().map_or(delta + 1, |b| b.len());
        flow_calls += 1;
        if let SeparatorResult::Separator(sep) = min_vertex_separator(g, &[s], &[t], Some(cap), ledger)? {
            best = Some(sep);
        }
    }
    let stats = ApproxStats {
        mixing_degree: hs.mixing.degree,
        mixing_lambda2: hs.mixing.lambda2,
        small_set_alpha: hs.small_set.as_ref().map(|s| s.alpha),
        small_set_beta: hs.small_set.as_ref().map(|s| s.beta),
        mixing_edges: hs.mixing.graph.m(),
        small_set_edges: hs.small_set.as_ref().map_or(0, |s| s.expander.graph.m()),
        flow_calls,
    };
    Ok(match best {
        Some(separator) if separator.len() <= delta => ApproxOutcome::Separator {
            separator,
            from_min_degree: false,
            stats,
        },
        _ => ApproxOutcome::Separator {
            separator: g.neighbors(v).to_vec(),
            from_min_degree: true,
            stats,
        },
    })
}

/// Both sides of `cut` hold at least `ε·κ` vertices.
///
/// Holds for every minimum cut once `δ ≥ (1+ε)κ`: a vertex of `L` has all its
/// neighbours in `L ∪ S`, so `|L| ≥ δ + 1 - κ > εκ`.
pub fn is_eps_balanced(cut: &VertexCut, kappa: usize, eps: f64) -> bool {
    let need = eps * kappa as f64;
    cut.left().len() as f64 >= need && cut.right().len() as f64 >= need
}
