//! Isolating vertex cuts: a minimum `({v}, I \ {v})` separator for every
//! vertex `v` of an independent set `I`, using `⌈log₂|I|⌉` rounds of
//! separator computations plus one small flow per vertex.
//!
//! Round `i` separates the vertices whose rank has bit `i` clear from those
//! whose rank has it set. Deleting the union of the round separators leaves
//! every `v ∈ I` alone in its component `U_v`. Some minimum isolating cut for
//! `v` keeps its `v`-side inside `U_v`, so it is found by a flow from `v` to a
//! super-sink attached to the boundary `N(U_v)`, run on `G[U_v ∪ N(U_v)]`.
//! The regions are disjoint, which keeps the per-vertex flows at `O(m)` total.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{min_vertex_separator, FlowLedger, SeparatorResult};
use crate::graph::{components_avoiding, Graph};
use crate::hashing::ceil_log2;

/// Greedy maximal independent subset of `candidates`, scanning ids upward.
pub fn maximal_independent_set(g: &Graph, candidates: &[usize]) -> Vec<usize> {
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut blocked = vec![false; g.n()];
    let mut out = Vec::new();
    for v in sorted {
        if blocked[v] {
            continue;
        }
        out.push(v);
        blocked[v] = true;
        for &w in g.neighbors(v) {
            blocked[w] = true;
        }
    }
    out
}

/// Per-vertex isolating separators, sorted by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingCuts {
    pub cuts: Vec<(usize, SeparatorResult)>,
}

impl IsolatingCuts {
    pub fn get(&self, v: usize) -> Option<&SeparatorResult> {
        self.cuts
            .binary_search_by_key(&v, |(u, _)| *u)
            .ok()
            .map(|i| &self.cuts[i].1)
    }

    /// Smallest separator found, ties broken lexicographically.
    pub fn smallest(&self) -> Option<&[usize]> {
        self.cuts
            .iter()
            .filter_map(|(_, r)| r.separator())
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
    }
}

fn check_independent(g: &Graph, set: &[usize]) -> Result<Vec<usize>> {
    let n = g.n();
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < 2 {
        return Err(Error::InvalidArgument("isolating cuts need at least 2 vertices".into()));
    }
    if let Some(&v) = sorted.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { line: None, vertex: v, n });
    }
    let mut inside = vec![false; n];
    for &v in &sorted {
        inside[v] = true;
    }
    for &u in &sorted {
        if let Some(&w) = g.neighbors(u).iter().find(|&&w| inside[w]) {
            return Err(Error::NotIndependent { edge: (u.min(w), u.max(w)) });
        }
    }
    Ok(sorted)
}

/// Isolating cuts by rank-bit rounds and region-restricted flows.
///
/// The round separators are computed exactly; `cap` only bounds the
/// per-vertex flows, whose results become [`SeparatorResult::AtLeast`] when
/// the minimum is at least `cap`.
pub fn isolating_vertex_cuts(
    g: &Graph,
    independent: &[usize],
    cap: Option<usize>,
    ledger: &FlowLedger,
) -> Result<IsolatingCuts> {
    let set = check_independent(g, independent)?;
    let n = g.n();
    let mut removed = vec![false; n];
    for bit in 0..ceil_log2(set.len()) {
        let (mut zeros, mut ones): (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
        for (rank, &v) in set.iter().enumerate() {
            if rank >> bit & 1 == 1 {
                ones.push(v);
            } else {
                zeros.push(v);
            }
        }
        if let SeparatorResult::Separator(s) = min_vertex_separator(g, &zeros, &ones, None, ledger)? {
            for v in s {
                removed[v] = true;
            }
        }
    }

    let mut region_of = vec![usize::MAX; n];
    let regions = components_avoiding(g, &removed);
    for (r, comp) in regions.iter().enumerate() {
        for &v in comp {
            region_of[v] = r;
        }
    }

    let mut cuts = Vec::with_capacity(set.len());
    let mut local = vec![usize::MAX; n];
    for &v in &set {
        let region = &regions[region_of[v]];
        let boundary = g.neighborhood(region);
        debug_assert!(boundary.iter().all(|&b| removed[b]));
        if boundary.is_empty() {
            cuts.push((v, SeparatorResult::Separator(Vec::new())));
            continue;
        }
        let vertices: Vec<usize> = region.iter().chain(boundary.iter()).copied().collect();
        for (i, &x) in vertices.iter().enumerate() {
            local[x] = i;
        }
        let sink = vertices.len();
        let mut edges = Vec::new();
        for &x in region {
            for &y in g.neighbors(x) {
                if local[y] != usize::MAX && (x < y || removed[y]) {
                    edges.push((local[x], local[y]));
                }
            }
        }
        edges.extend((region.len()..sink).map(|i| (i, sink)));
        let aux = Graph::from_edges(sink + 1, edges)?;
        for &x in &vertices {
            local[x] = usize::MAX;
        }
        let result = match min_vertex_separator(&aux, &[local_index(region, v)], &[sink], cap, ledger)? {
            SeparatorResult::Separator(s) => {
                let mut mapped: Vec<usize> = s.into_iter().map(|i| vertices[i]).collect();
                mapped.sort_unstable();
                SeparatorResult::Separator(mapped)
            }
            at_least => at_least,
        };
        cuts.push((v, result));
    }
    Ok(IsolatingCuts { cuts })
}

fn local_index(region: &[usize], v: usize) -> usize {
    region.binary_search(&v).expect("vertex lies in its own region")
}

/// Reference mode: one direct `({v}, I \ {v})` flow per vertex.
pub fn isolating_vertex_cuts_naive(
    g: &Graph,
    independent: &[usize],
    cap: Option<usize>,
    ledger: &FlowLedger,
) -> Result<IsolatingCuts> {
    let set = check_independent(g, independent)?;
    let mut cuts = Vec::with_capacity(set.len());
    for &v in &set {
        let rest: Vec<usize> = set.iter().copied().filter(|&u| u != v).collect();
        cuts.push((v, min_vertex_separator(g, &[v], &rest, cap, ledger)?));
    }
    Ok(IsolatingCuts { cuts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::separates;
    use rand::{Rng, SeedableRng};

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn sep(r: &IsolatingCuts, v: usize) -> Vec<usize> {
        r.get(v).unwrap().separator().unwrap().to_vec()
    }

    #[test]
    fn mis_examples() {
        assert_eq!(maximal_independent_set(&path(3), &[0, 1, 2]), vec![0, 2]);
        assert_eq!(maximal_independent_set(&Graph::complete(4), &[0, 1, 2, 3]), vec![0]);
        assert_eq!(maximal_independent_set(&cycle(4), &[3, 2, 1, 0]), vec![0, 2]);
    }

    #[test]
    fn star_and_path_examples() {
        let ledger = FlowLedger::new();
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = isolating_vertex_cuts(&star, &[1, 2, 3], None, &ledger).unwrap();
        for v in 1..4 {
            assert_eq!(sep(&r, v), vec![0]);
        }
        let r = isolating_vertex_cuts(&path(5), &[0, 2, 4], None, &ledger).unwrap();
        assert_eq!(sep(&r, 0), vec![1]);
        assert_eq!(sep(&r, 2), vec![1, 3]);
        assert_eq!(sep(&r, 4), vec![3]);
        assert_eq!(r.smallest().unwrap(), &[1]);
    }

    #[test]
    fn argument_errors() {
        let ledger = FlowLedger::new();
        assert_eq!(
            isolating_vertex_cuts(&path(3), &[0, 1], None, &ledger).unwrap_err(),
            Error::NotIndependent { edge: (0, 1) }
        );
        assert!(isolating_vertex_cuts(&path(3), &[0], None, &ledger).is_err());
    }

    #[test]
    fn disconnected_region_gives_empty_cut() {
        let ledger = FlowLedger::new();
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let r = isolating_vertex_cuts(&g, &[0, 2, 3], None, &ledger).unwrap();
        assert_eq!(sep(&r, 3), Vec::<usize>::new());
        assert_eq!(sep(&r, 0), vec![1]);
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn matches_naive_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(10..50);
            let p = rng.gen_range(0.05..0.4);
            let g = random_graph(&mut rng, n, p);
            let candidates: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let set = maximal_independent_set(&g, &candidates);
            if set.len() < 2 {
                continue;
            }
            let ledger = FlowLedger::new();
            let fast = isolating_vertex_cuts(&g, &set, None, &ledger).unwrap();
            let naive = isolating_vertex_cuts_naive(&g, &set, None, &FlowLedger::new()).unwrap();
            for &v in &set {
                let c = sep(&fast, v);
                assert_eq!(c.len(), sep(&naive, v).len());
                let rest: Vec<usize> = set.iter().copied().filter(|&u| u != v).collect();
                assert!(separates(&g, &c, &[v], &rest));
            }
            let bound = g.m() as u64 * (ceil_log2(set.len()) as u64 + 4);
            assert!(ledger.snapshot().instance_edges <= bound);
        }
    }

    #[test]
    fn capped_mode_agrees_with_threshold() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let g = random_graph(&mut rng, 30, 0.2);
            let set = maximal_independent_set(&g, &(0..30).step_by(3).collect::<Vec<_>>());
            if set.len() < 2 {
                continue;
            }
            let ledger = FlowLedger::new();
            let exact = isolating_vertex_cuts(&g, &set, None, &ledger).unwrap();
            let capped = isolating_vertex_cuts(&g, &set, Some(3), &ledger).unwrap();
            for &v in &set {
                let size = sep(&exact, v).len();
                match capped.get(v).unwrap() {
                    SeparatorResult::Separator(s) => assert_eq!(s.len(), size),
                    SeparatorResult::AtLeast(c) => assert!(size >= *c),
                }
            }
        }
    }
}
