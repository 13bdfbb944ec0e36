//! Terminal reduction and the exact k-connectivity driver.
//!
//! A sparse cut `(L, S, R)` splits the instance into a left graph, where `R`
//! is replaced by a `k`-clique joined to all of `S`, and the symmetric right
//! graph. A Steiner cut of size below `k` survives in `S` or in one of the two
//! side graphs, and any separator of size below `k` found in a side graph is a
//! separator of the original graph once the clique vertices are dropped.

pub mod finder;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{min_vertex_separator, FlowLedger, SeparatorResult};
use crate::graph::{is_separator, Graph, TerminalSet, VertexCut};
use crate::hashing::ceil_log2;
use crate::unbalanced::unbalanced;

pub use finder::{BruteSparse, HeuristicSparse, SparseCutFinder, SparseCutResult, BRUTE_SPARSE_MAX_N};

/// `|S| / min(|T ∩ (L ∪ S)|, |T ∩ (R ∪ S)|)`.
pub fn terminal_expansion(cut: &VertexCut, terminals: &TerminalSet) -> Result<Ratio<u64>> {
    let in_sep = terminals.count_in(cut.separator());
    let left = terminals.count_in(cut.left()) + in_sep;
    let right = terminals.count_in(cut.right()) + in_sep;
    let min = left.min(right);
    if min == 0 {
        return Err(Error::UndefinedExpansion);
    }
    Ok(Ratio::new(cut.size() as u64, min as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// One side of a cut with the other side replaced by a `k`-clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideGraph {
    pub graph: Graph,
    pub side: Side,
    /// Clique vertices, the last `k` ids of `graph`.
    pub clique: Vec<usize>,
    /// Smallest clique vertex; stands in for the replaced side as a terminal.
    pub special_terminal: usize,
    /// Original id of each vertex, `None` for clique vertices.
    pub id_map: Vec<Option<usize>>,
    /// Local id of each original vertex kept in the side graph.
    local: Vec<Option<usize>>,
}

impl SideGraph {
    pub fn local_id(&self, original: usize) -> Option<usize> {
        self.local.get(original).copied().flatten()
    }

    pub fn is_clique_vertex(&self, v: usize) -> bool {
        self.id_map[v].is_none()
    }

    /// Maps a side-graph separator smaller than `k` back to the original
    /// graph by dropping clique vertices.
    pub fn lift_separator(&self, separator: &[usize]) -> Result<Vec<usize>> {
        if separator.len() >= self.clique.len() {
            return Err(Error::InvalidArgument(format!(
                "only separators smaller than k = {} lift, got {} vertices",
                self.clique.len(),
                separator.len()
            )));
        }
        let mut out: Vec<usize> = separator.iter().filter_map(|&v| self.id_map[v]).collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// Builds the `k`-left (`Side::Left`) or `k`-right graph of `cut`.
///
/// Kept vertices are relabelled in increasing original order, followed by
/// the `k` clique vertices. With `remove_separator_edges` the edges inside
/// `S` are dropped.
pub fn build_side_graph(
    g: &Graph,
    cut: &VertexCut,
    k: usize,
    side: Side,
    remove_separator_edges: bool,
) -> Result<SideGraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("clique size k must be at least 1".into()));
    }
    let n = g.n();
    let kept_side = match side {
        Side::Left => cut.left(),
        Side::Right => cut.right(),
    };
    let mut kept: Vec<usize> = kept_side.iter().chain(cut.separator()).copied().collect();
    kept.sort_unstable();
    let mut local = vec![None; n];
    for (i, &v) in kept.iter().enumerate() {
        local[v] = Some(i);
    }
    let mut in_sep = vec![false; n];
    for &v in cut.separator() {
        in_sep[v] = true;
    }
    let base = kept.len();
    let mut edges = Vec::new();
    for (i, &v) in kept.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(j) = local[w] {
                if i < j && !(remove_separator_edges && in_sep[v] && in_sep[w]) {
                    edges.push((i, j));
                }
            }
        }
    }
    for a in base..base + k {
        for b in a + 1..base + k {
            edges.push((a, b));
        }
        for &s in cut.separator() {
            edges.push((local[s].unwrap(), a));
        }
    }
    let graph = Graph::from_edges(base + k, edges)?;
    let mut id_map: Vec<Option<usize>> = kept.iter().map(|&v| Some(v)).collect();
    id_map.extend(std::iter::repeat(None).take(k));
    Ok(SideGraph {
        graph,
        side,
        clique: (base..base + k).collect(),
        special_terminal: base,
        id_map,
        local,
    })
}

/// Parameters of the reduction: target `k`, expansion thresholds `φ < φ̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionParams {
    pub k: usize,
    pub phi: Ratio<u64>,
    pub phi_bar: Ratio<u64>,
    /// When a finder reports an uncertified expander and the unbalanced sweep
    /// finds nothing, fall back to all pairs over the terminals so the answer
    /// stays exact.
    pub exact_fallback: bool,
}

impl ReductionParams {
    pub fn new(k: usize, phi: Ratio<u64>, phi_bar: Ratio<u64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        let zero = Ratio::from_integer(0);
        if !(zero < phi && phi < phi_bar && phi_bar < Ratio::new(1, 2)) {
            return Err(Error::InvalidArgument(format!(
                "need 0 < phi < phi_bar < 1/2, got phi = {phi}, phi_bar = {phi_bar}"
            )));
        }
        Ok(Self {
            k,
            phi,
            phi_bar,
            exact_fallback: true,
        })
    }

    /// `φ = 1 / max(⌈log₂n⌉, 3)²` and `φ̄ = 4φ`.
    pub fn default_for(n: usize, k: usize) -> Result<Self> {
        let (phi, phi_bar) = default_phis(n);
        Self::new(k, phi, phi_bar)
    }

    /// `|T| ≤ 10k/φ`.
    pub fn is_base_case(&self, t: usize) -> bool {
        (t as u128) * (*self.phi.numer() as u128) <= 10 * (self.k as u128) * (*self.phi.denom() as u128)
    }

    /// `β = ⌈10k/φ⌉`.
    pub fn beta(&self) -> usize {
        let num = 10 * self.k as u64 * *self.phi.denom();
        num.div_ceil(*self.phi.numer()) as usize
    }
}

pub fn default_phis(n: usize) -> (Ratio<u64>, Ratio<u64>) {
    let lg = (ceil_log2(n) as u64).max(3);
    let phi = Ratio::new(1, lg * lg);
    (phi, phi * 4)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionOutcome {
    /// A separator of the input graph with fewer than `k` vertices.
    Separator(Vec<usize>),
    /// A terminal set whose Steiner connectivity is below `k` whenever that
    /// of the input terminals is. Empty means no Steiner cut below `k`.
    NewTerminals(TerminalSet),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStats {
    pub calls: usize,
    pub max_depth: usize,
    pub base_cases: usize,
    pub expander_cases: usize,
    pub sparse_cuts: usize,
    pub small_separator_shortcuts: usize,
    pub right_expander_shortcuts: usize,
    pub all_pairs_fallbacks: usize,
}

/// All pairs of nonadjacent terminals, stopping at the first separator
/// below `k`.
pub fn all_pairs_below_k(
    g: &Graph,
    terminals: &[usize],
    k: usize,
    ledger: &FlowLedger,
) -> Result<Option<Vec<usize>>> {
    for (i, &u) in terminals.iter().enumerate() {
        for &v in &terminals[i + 1..] {
            if g.has_edge(u, v) {
                continue;
            }
            if let SeparatorResult::Separator(s) = min_vertex_separator(g, &[u], &[v], Some(k), ledger)? {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// Terminal reduction on `(g, terminals)`.
pub fn reduce_terminal_slow(
    g: &Graph,
    terminals: &TerminalSet,
    params: &ReductionParams,
    finder: &dyn SparseCutFinder,
    ledger: &FlowLedger,
    stats: &mut ReductionStats,
) -> Result<ReductionOutcome> {
    ReductionParams::new(params.k, params.phi, params.phi_bar)?;
    reduce(g, terminals, params, finder, ledger, stats, 0)
}

fn base_case(
    g: &Graph,
    terminals: &TerminalSet,
    k: usize,
    ledger: &FlowLedger,
) -> Result<ReductionOutcome> {
    Ok(match all_pairs_below_k(g, terminals.as_slice(), k, ledger)? {
        Some(s) => ReductionOutcome::Separator(s),
        None => ReductionOutcome::NewTerminals(TerminalSet::default()),
    })
}

/// Original id standing in for the clique of `side_graph`: the smallest
/// terminal of the replaced side, else its smallest vertex.
fn clique_representative(cut: &VertexCut, side: Side, terminals: &TerminalSet) -> usize {
    let replaced = match side {
        Side::Left => cut.right(),
        Side::Right => cut.left(),
    };
    replaced
        .iter()
        .copied()
        .find(|&v| terminals.contains(v))
        .unwrap_or(replaced[0])
}

fn side_terminals(sg: &SideGraph, kept_terminals: impl Iterator<Item = usize>) -> TerminalSet {
    let mut t: Vec<usize> = kept_terminals.filter_map(|v| sg.local_id(v)).collect();
    t.push(sg.special_terminal);
    t.sort_unstable();
    t.dedup();
    TerminalSet::from_sorted(t)
}

fn map_back<'a>(sg: &'a SideGraph, set: &'a TerminalSet, representative: usize) -> impl Iterator<Item = usize> + 'a {
    set.as_slice()
        .iter()
        .map(move |&v| sg.id_map[v].unwrap_or(representative))
}

#[allow(clippy::too_many_arguments)]
fn reduce(
    g: &Graph,
    terminals: &TerminalSet,
    params: &ReductionParams,
    finder: &dyn SparseCutFinder,
    ledger: &FlowLedger,
    stats: &mut ReductionStats,
    depth: usize,
) -> Result<ReductionOutcome> {
    stats.calls += 1;
    stats.max_depth = stats.max_depth.max(depth);
    let k = params.k;
    if params.is_base_case(terminals.len()) {
        stats.base_cases += 1;
        return base_case(g, terminals, k, ledger);
    }

    let cut = match finder.find(g, terminals, params.phi_bar)? {
        SparseCutResult::Expander { certified } => {
            stats.expander_cases += 1;
            let found = unbalanced(g, terminals, params.beta(), Some(k), ledger)?;
            if let Some(s) = found.separator {
                return Ok(ReductionOutcome::Separator(s));
            }
            if certified || !params.exact_fallback {
                return Ok(ReductionOutcome::NewTerminals(TerminalSet::default()));
            }
            stats.all_pairs_fallbacks += 1;
            return base_case(g, terminals, k, ledger);
        }
        SparseCutResult::Sparse(cut) => cut,
    };
    cut.validate(g)?;
    if terminal_expansion(&cut, terminals)? >= params.phi_bar {
        return Err(Error::InvalidArgument(format!(
            "finder `{}` returned a cut that is not sparse",
            finder.name()
        )));
    }
    stats.sparse_cuts += 1;
    // Keep the side with more terminals on the right.
    let cut = if terminals.count_in(cut.left()) > terminals.count_in(cut.right()) {
        cut.flipped()
    } else {
        cut
    };
    if cut.size() < k {
        stats.small_separator_shortcuts += 1;
        return Ok(ReductionOutcome::Separator(cut.separator().to_vec()));
    }

    let t = terminals.len();
    let in_sep = terminals.count_in(cut.separator());
    let left_with_sep = terminals.count_in(cut.left()) + in_sep;
    let right_with_sep = terminals.count_in(cut.right()) + in_sep;
    let balanced = 3 * left_with_sep.min(right_with_sep) >= t;

    let left_graph = build_side_graph(g, &cut, k, Side::Left, true)?;
    let left_terms = side_terminals(&left_graph, cut.left().iter().copied().filter(|&v| terminals.contains(v)));
    let left_out = reduce(&left_graph.graph, &left_terms, params, finder, ledger, stats, depth + 1)?;
    let left_new = match left_out {
        ReductionOutcome::Separator(s) => {
            return Ok(ReductionOutcome::Separator(left_graph.lift_separator(&s)?));
        }
        ReductionOutcome::NewTerminals(ts) => ts,
    };

    let right_graph = build_side_graph(g, &cut, k, Side::Right, balanced)?;
    let right_new = if !balanced && right_side_is_expander(g, &cut, terminals, params, finder) {
        stats.right_expander_shortcuts += 1;
        let right_terms = side_terminals(
            &right_graph,
            cut.right()
                .iter()
                .chain(cut.separator())
                .copied()
                .filter(|&v| terminals.contains(v)),
        );
        let found = unbalanced(&right_graph.graph, &right_terms, params.beta(), Some(k), ledger)?;
        if let Some(s) = found.separator {
            return Ok(ReductionOutcome::Separator(right_graph.lift_separator(&s)?));
        }
        TerminalSet::default()
    } else {
        let right_terms = side_terminals(&right_graph, cut.right().iter().copied().filter(|&v| terminals.contains(v)));
        match reduce(&right_graph.graph, &right_terms, params, finder, ledger, stats, depth + 1)? {
            ReductionOutcome::Separator(s) => {
                return Ok(ReductionOutcome::Separator(right_graph.lift_separator(&s)?));
            }
            ReductionOutcome::NewTerminals(ts) => ts,
        }
    };

    let left_rep = clique_representative(&cut, Side::Left, terminals);
    let right_rep = clique_representative(&cut, Side::Right, terminals);
    let mut next: Vec<usize> = cut
        .separator()
        .iter()
        .copied()
        .chain(map_back(&left_graph, &left_new, left_rep))
        .chain(map_back(&right_graph, &right_new, right_rep))
        .collect();
    next.sort_unstable();
    next.dedup();
    Ok(ReductionOutcome::NewTerminals(TerminalSet::from_sorted(next)))
}

/// Whether the finder certifies `G[R ∪ S]` as an expander for the terminals
/// it holds at threshold `2φ`.
fn right_side_is_expander(
    g: &Graph,
    cut: &VertexCut,
    terminals: &TerminalSet,
    params: &ReductionParams,
    finder: &dyn SparseCutFinder,
) -> bool {
    let mut vertices: Vec<usize> = cut.right().iter().chain(cut.separator()).copied().collect();
    vertices.sort_unstable();
    let sub = g.induced_subgraph(&vertices);
    let sub_terms: Vec<usize> = (0..vertices.len()).filter(|&i| terminals.contains(vertices[i])).collect();
    let threshold = params.phi * 2;
    matches!(
        finder.find(&sub, &TerminalSet::from_sorted(sub_terms), threshold),
        Ok(SparseCutResult::Expander { certified: true })
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum KConnOutcome {
    /// A verified separator with fewer than `k` vertices.
    Separator(Vec<usize>),
    KConnected,
    /// The input is disconnected; the empty set already separates it.
    Disconnected,
    /// The input is complete and `k` exceeds its connectivity `n - 1`.
    CompleteGraph { kappa: usize },
}

impl KConnOutcome {
    /// Whether the graph has connectivity at least `k`.
    pub fn is_k_connected(&self) -> bool {
        matches!(self, KConnOutcome::KConnected)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriverStats {
    pub iterations: usize,
    pub terminal_sizes_final: usize,
    pub halving_fallbacks: usize,
    pub iteration_cap_fallbacks: usize,
    pub reduction: ReductionStats,
}

/// Decides whether `κ(G) ≥ k`, returning a separator below `k` otherwise.
///
/// Starts from `T = V` and applies the terminal reduction until it reports a
/// separator or an empty terminal set. A round that fails to halve `T`, or
/// running past `2⌈log₂n⌉` rounds, falls back to all pairs over `T`.
pub fn check_k_connectivity(
    g: &Graph,
    params: &ReductionParams,
    finder: &dyn SparseCutFinder,
    ledger: &FlowLedger,
    stats: &mut DriverStats,
) -> Result<KConnOutcome> {
    let n = g.n();
    let k = params.k;
    ReductionParams::new(k, params.phi, params.phi_bar)?;
    if n == 0 {
        return Err(Error::InvalidArgument("empty graph".into()));
    }
    if !g.is_connected() {
        return Ok(KConnOutcome::Disconnected);
    }
    if g.is_complete() {
        return Ok(if k > n - 1 {
            KConnOutcome::CompleteGraph { kappa: n - 1 }
        } else {
            KConnOutcome::KConnected
        });
    }
    let verified = |s: Vec<usize>| -> Result<KConnOutcome> {
        if s.len() >= k || !is_separator(g, &s) {
            return Err(Error::NotASeparator);
        }
        Ok(KConnOutcome::Separator(s))
    };
    let all_pairs = |t: &TerminalSet| -> Result<KConnOutcome> {
        match all_pairs_below_k(g, t.as_slice(), k, ledger)? {
            Some(s) => verified(s),
            None => Ok(KConnOutcome::KConnected),
        }
    };

    let mut terminals = TerminalSet::all(n);
    let cap = 2 * (ceil_log2(n) as usize).max(1);
    for _ in 0..cap {
        stats.iterations += 1;
        match reduce_terminal_slow(g, &terminals, params, finder, ledger, &mut stats.reduction)? {
            ReductionOutcome::Separator(s) => return verified(s),
            ReductionOutcome::NewTerminals(next) => {
                stats.terminal_sizes_final = next.len();
                if next.is_empty() {
                    return Ok(KConnOutcome::KConnected);
                }
                if 2 * next.len() > terminals.len() {
                    stats.halving_fallbacks += 1;
                    return all_pairs(&terminals);
                }
                terminals = next;
            }
        }
    }
    stats.iteration_cap_fallbacks += 1;
    all_pairs(&terminals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, e).unwrap()
    }

    /// Cliques of size `size` in a row, consecutive ones sharing `overlap` vertices.
    fn clique_chain(count: usize, size: usize, overlap: usize) -> Graph {
        let step = size - overlap;
        let n = step * (count - 1) + size;
        let mut e = std::collections::BTreeSet::new();
        for c in 0..count {
            let lo = c * step;
            for u in lo..lo + size {
                for v in u + 1..lo + size {
                    e.insert((u, v));
                }
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let g = bowtie();
        let cut = VertexCut::new(&g, vec![0, 1], vec![2], vec![3, 4]).unwrap();
        assert_eq!(terminal_expansion(&cut, &TerminalSet::all(5)).unwrap(), Ratio::new(1, 3));
        let t = TerminalSet::new(5, vec![0, 3]).unwrap();
        assert_eq!(terminal_expansion(&cut, &t).unwrap(), Ratio::new(1, 1));
        let t = TerminalSet::new(5, vec![0, 1]).unwrap();
        assert_eq!(terminal_expansion(&cut, &t).unwrap_err(), Error::UndefinedExpansion);

        // |S| = 2 with 4 and 6 terminals on the two sides.
        let g = Graph::from_edges(10, [(0, 4), (1, 4), (4, 2), (4, 3), (5, 6), (5, 7), (5, 8), (5, 9)]).unwrap();
        let cut = VertexCut::new(&g, vec![0, 1], vec![4, 5], vec![2, 3, 6, 7, 8, 9]).unwrap();
        let t = TerminalSet::new(10, vec![0, 1, 4, 5, 2, 3, 6, 7]).unwrap();
        assert_eq!(terminal_expansion(&cut, &t).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn side_graph_examples() {
        let p4 = path(4);
        let cut = VertexCut::new(&p4, vec![0], vec![1], vec![2, 3]).unwrap();
        let left = build_side_graph(&p4, &cut, 2, Side::Left, true).unwrap();
        assert_eq!(left.graph.n(), 4);
        assert_eq!(left.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(left.special_terminal, 2);
        assert_eq!(left.id_map, vec![Some(0), Some(1), None, None]);

        let right = build_side_graph(&p4, &cut, 2, Side::Right, true).unwrap();
        assert_eq!(right.graph.n(), 5);
        assert_eq!(right.id_map, vec![Some(1), Some(2), Some(3), None, None]);
        assert_eq!(
            right.graph.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 3), (0, 4), (1, 2), (3, 4)]
        );

        let g = bowtie();
        let cut = VertexCut::new(&g, vec![0, 1], vec![2], vec![3, 4]).unwrap();
        let left = build_side_graph(&g, &cut, 3, Side::Left, true).unwrap();
        assert_eq!(left.graph.m(), 3 + 3 + 3);
        for &c in &left.clique {
            assert!(left.graph.has_edge(left.local_id(2).unwrap(), c));
        }
        assert!(left.local_id(3).is_none());
    }

    #[test]
    fn separator_edges_flag() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let cut = VertexCut::new(&g, vec![0], vec![1, 2], vec![3]).unwrap();
        let keep = build_side_graph(&g, &cut, 2, Side::Left, false).unwrap();
        let drop = build_side_graph(&g, &cut, 2, Side::Left, true).unwrap();
        assert_eq!(keep.graph.m(), drop.graph.m() + 1);
    }

    #[test]
    fn lifting_shared_clique_vertices() {
        // Two 6-cliques sharing vertices 4 and 5.
        let g = clique_chain(2, 6, 2);
        assert_eq!(g.n(), 10);
        let cut = VertexCut::new(&g, vec![0, 1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]).unwrap();
        let left = build_side_graph(&g, &cut, 3, Side::Left, false).unwrap();
        let s: Vec<usize> = [4, 5].iter().map(|&v| left.local_id(v).unwrap()).collect();
        assert!(is_separator(&left.graph, &s));
        let lifted = left.lift_separator(&s).unwrap();
        assert_eq!(lifted, vec![4, 5]);
        assert!(is_separator(&g, &lifted));
        assert!(left.lift_separator(&[0, 1, 2]).is_err());

        // A separator containing a clique vertex.
        let p = path(5);
        let cut = VertexCut::new(&p, vec![0, 1], vec![2], vec![3, 4]).unwrap();
        let left = build_side_graph(&p, &cut, 2, Side::Left, true).unwrap();
        let c = left.special_terminal;
        let s = [left.local_id(1).unwrap(), c];
        let lifted = left.lift_separator(&s[..1]).unwrap();
        assert_eq!(lifted, vec![1]);
        assert!(is_separator(&p, &lifted));
        let big = build_side_graph(&p, &cut, 3, Side::Left, true).unwrap();
        let s = vec![big.local_id(1).unwrap(), big.special_terminal];
        assert!(is_separator(&big.graph, &s));
        let lifted = big.lift_separator(&s).unwrap();
        assert_eq!(lifted, vec![1]);
        assert!(is_separator(&p, &lifted));
    }

    #[test]
    fn base_case_examples() {
        let ledger = FlowLedger::new();
        let mut stats = ReductionStats::default();
        let params = ReductionParams::new(3, Ratio::new(1, 9), Ratio::new(4, 9)).unwrap();
        let out = reduce_terminal_slow(
            &Graph::complete(6),
            &TerminalSet::all(6),
            &params,
            &HeuristicSparse::default(),
            &ledger,
            &mut stats,
        )
        .unwrap();
        assert_eq!(out, ReductionOutcome::NewTerminals(TerminalSet::default()));

        let params = ReductionParams::new(2, Ratio::new(1, 9), Ratio::new(4, 9)).unwrap();
        let out = reduce_terminal_slow(&bowtie(), &TerminalSet::all(5), &params, &HeuristicSparse::default(), &ledger, &mut stats)
            .unwrap();
        assert_eq!(out, ReductionOutcome::Separator(vec![2]));
        assert_eq!(stats.base_cases, 2);
    }

    #[test]
    fn params_validation() {
        assert!(ReductionParams::new(2, Ratio::new(1, 4), Ratio::new(1, 2)).is_err());
        assert!(ReductionParams::new(2, Ratio::new(1, 4), Ratio::new(1, 4)).is_err());
        assert!(ReductionParams::new(0, Ratio::new(1, 9), Ratio::new(4, 9)).is_err());
        let p = ReductionParams::default_for(100, 3).unwrap();
        assert_eq!(p.phi, Ratio::new(1, 49));
        assert_eq!(p.phi_bar, Ratio::new(4, 49));
        assert_eq!(p.beta(), 1470);
        assert!(p.is_base_case(1470) && !p.is_base_case(1471));
        assert_eq!(ReductionParams::default_for(4, 1).unwrap().phi, Ratio::new(1, 9));
    }

    fn check(g: &Graph, k: usize) -> KConnOutcome {
        let params = ReductionParams::default_for(g.n(), k).unwrap();
        check_k_connectivity(g, &params, &HeuristicSparse::default(), &FlowLedger::new(), &mut DriverStats::default())
            .unwrap()
    }

    #[test]
    fn driver_examples() {
        assert_eq!(check(&cycle(5), 2), KConnOutcome::KConnected);
        match check(&cycle(5), 3) {
            KConnOutcome::Separator(s) => assert_eq!(s.len(), 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(check(&petersen(), 3), KConnOutcome::KConnected);
        match check(&petersen(), 4) {
            KConnOutcome::Separator(s) => assert_eq!(s.len(), 3),
            other => panic!("{other:?}"),
        }
        assert_eq!(check(&Graph::complete(4), 3), KConnOutcome::KConnected);
        assert_eq!(check(&Graph::complete(4), 4), KConnOutcome::CompleteGraph { kappa: 3 });
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(check(&two, 1), KConnOutcome::Disconnected);
        assert_eq!(check(&Graph::empty(1), 1), KConnOutcome::CompleteGraph { kappa: 0 });
        // k beyond n - 1 on a non-complete graph still reports its separator.
        match check(&path(3), 5) {
            KConnOutcome::Separator(s) => assert_eq!(s, vec![1]),
            other => panic!("{other:?}"),
        }
    }

    fn aggressive(k: usize) -> ReductionParams {
        ReductionParams::new(k, Ratio::new(2, 5), Ratio::new(9, 20)).unwrap()
    }

    #[test]
    fn recursion_on_clique_chains() {
        // k = 4: base threshold |T| <= 100, chain of 12 cliques is larger.
        for (count, overlap, k) in [(12, 4, 4), (12, 3, 4), (16, 2, 2)] {
            let g = clique_chain(count, 14, overlap);
            let ledger = FlowLedger::new();
            let mut stats = DriverStats::default();
            let out = check_k_connectivity(&g, &aggressive(k), &HeuristicSparse::default(), &ledger, &mut stats).unwrap();
            let r = stats.reduction;
            assert!(r.sparse_cuts > 0, "no recursion on chain {count}/{overlap}");
            let lg = ceil_log2(g.n()) as usize;
            assert!(r.max_depth <= 2 * lg, "depth {} for n = {}", r.max_depth, g.n());
            if overlap < k {
                match out {
                    KConnOutcome::Separator(s) => assert!(s.len() < k && is_separator(&g, &s)),
                    other => panic!("{other:?}"),
                }
            } else {
                assert_eq!(out, KConnOutcome::KConnected);
            }
        }
    }

    #[test]
    fn barbell_with_brute_finder() {
        // Two 40-cliques, three bridge vertices adjacent to all 80 of them.
        let mut e = Vec::new();
        for side in [0, 43] {
            for u in side..side + 40 {
                for v in u + 1..side + 40 {
                    e.push((u, v));
                }
                for b in 40..43 {
                    e.push((u, b));
                }
            }
        }
        let g = Graph::from_edges(83, e).unwrap();
        // 10k/φ < 83 needs φ close to 1/2.
        let params = ReductionParams::new(4, Ratio::new(49, 100), Ratio::new(99, 200)).unwrap();
        assert!(!params.is_base_case(83));
        let ledger = FlowLedger::new();
        let mut stats = ReductionStats::default();
        let out = reduce_terminal_slow(&g, &TerminalSet::all(83), &params, &BruteSparse::bounded(3), &ledger, &mut stats)
            .unwrap();
        assert_eq!(out, ReductionOutcome::Separator(vec![40, 41, 42]));
        assert_eq!(stats.small_separator_shortcuts, 1);
    }

    #[test]
    fn reduction_soundness_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(8..40);
            let p = rng.gen_range(0.1..0.6);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            let k = rng.gen_range(1..6);
            let params = ReductionParams::new(k, Ratio::new(1, 50), Ratio::new(9, 20)).unwrap();
            let mut stats = DriverStats::default();
            let out = check_k_connectivity(&g, &params, &HeuristicSparse::default(), &FlowLedger::new(), &mut stats).unwrap();
            let base = check(&g, k);
            assert_eq!(out.is_k_connected(), base.is_k_connected());
        }
    }
}
