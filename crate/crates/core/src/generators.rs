//! Deterministic graph generators for tests and benchmarks.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowLedger;
use crate::graph::{components_avoiding, Graph, VertexCut};
use crate::oracles::{brute_force_kappa, kappa_even, DEFAULT_BRUTE_CAP};

pub use crate::expander::circulant;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let p = p.clamp(0.0, 1.0);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// `G(n, p)` with its components chained together by one edge between the
/// smallest vertices of consecutive components.
pub fn random_connected_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let g = gnp(n, p, seed);
    let comps = components_avoiding(&g, &vec![false; n]);
    if comps.len() <= 1 {
        return g;
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.extend(comps.windows(2).map(|w| (w[0][0], w[1][0])));
    Graph::from_edges(n, edges).expect("bridging edges are new")
}

/// Two cliques of `clique` vertices and `bridge` vertices adjacent to all of
/// them. The bridge set is the unique minimum separator when `bridge < clique`.
///
/// Ids: first clique `0..clique`, bridge `clique..clique+bridge`, second
/// clique after that.
pub fn barbell(clique: usize, bridge: usize) -> Graph {
    let n = 2 * clique + bridge;
    let mut e = Vec::new();
    for side in [0, clique + bridge] {
        for u in side..side + clique {
            e.extend((u + 1..side + clique).map(|v| (u, v)));
            e.extend((clique..clique + bridge).map(|b| (u, b)));
        }
    }
    Graph::from_edges(n, e).expect("barbell edges are valid")
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("Petersen edges are valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlantedSpec {
    pub left: usize,
    pub separator: usize,
    pub right: usize,
    /// Edge probability inside each side.
    pub density: f64,
    /// Probability that a separator vertex sees a given side vertex.
    pub attach: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub cut: VertexCut,
    /// Seed of the accepted attempt.
    pub seed: u64,
}

const PLANT_ATTEMPTS: u64 = 200;

/// A graph whose planted cut is a verified minimum vertex cut.
///
/// Both sides are random graphs, every separator vertex gets at least one
/// neighbour on each side, and ids are shuffled. Attempts whose connectivity
/// differs from the separator size are rejected; connectivity is checked by
/// enumeration up to the oracle cap and by exact capped flows above it.
pub fn planted_cut(spec: &PlantedSpec, seed: u64) -> Result<PlantedInstance> {
    let PlantedSpec {
        left,
        separator,
        right,
        density,
        attach,
    } = *spec;
    if left == 0 || right == 0 {
        return Err(Error::InvalidArgument("both sides of a planted cut need vertices".into()));
    }
    let n = left + separator + right;
    for attempt in 0..PLANT_ATTEMPTS {
        let s = seed.wrapping_mul(PLANT_ATTEMPTS).wrapping_add(attempt);
        let mut rng = rng_for(s);
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(&mut rng);
        let (l, rest) = ids.split_at(left);
        let (sep, r) = rest.split_at(separator);
        let mut edges = Vec::new();
        for side in [l, r] {
            for (i, &u) in side.iter().enumerate() {
                for &v in &side[i + 1..] {
                    if rng.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
        }
        for &x in sep {
            for side in [l, r] {
                let forced = side[rng.gen_range(0..side.len())];
                for &v in side {
                    if v == forced || rng.gen_bool(attach) {
                        edges.push((x, v));
                    }
                }
            }
        }
        let graph = Graph::from_edges(n, edges)?;
        let kappa = if n <= DEFAULT_BRUTE_CAP {
            brute_force_kappa(&graph)?.0
        } else {
            kappa_even(&graph, &FlowLedger::new())?
        };
        if kappa != separator || !graph.is_connected() {
            continue;
        }
        let mut l = l.to_vec();
        let mut sep = sep.to_vec();
        let mut r = r.to_vec();
        l.sort_unstable();
        sep.sort_unstable();
        r.sort_unstable();
        let cut = VertexCut::new(&graph, l, sep, r)?;
        return Ok(PlantedInstance { graph, cut, seed: s });
    }
    Err(Error::InvalidArgument(format!(
        "no attempt produced a minimum cut of size {separator} for {spec:?}"
    )))
}

/// Isomorphism-invariant code: the smallest upper-triangle adjacency word
/// over all labelings compatible with colour refinement. Needs `n ≤ 11`.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n * n.saturating_sub(1) / 2 <= 64, "canonical_code supports at most 11 vertices");
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for v in 0..n {
        cells[colors[v]].push(v);
    }
    let mut order = Vec::with_capacity(n);
    let mut best = u64::MAX;
    permute_cells(g, &mut cells, 0, &mut order, &mut best);
    best
}

fn permute_cells(g: &Graph, cells: &mut [Vec<usize>], cell: usize, order: &mut Vec<usize>, best: &mut u64) {
    if cell == cells.len() {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                if g.has_edge(order[i], order[j]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        *best = (*best).min(code);
        return;
    }
    let len = cells[cell].len();
    permute_within(g, cells, cell, len, order, best);
}

fn permute_within(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    remaining: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if remaining == 0 {
        permute_cells(g, cells, cell + 1, order, best);
        return;
    }
    for i in 0..remaining {
        let v = cells[cell][i];
        cells[cell].swap(i, remaining - 1);
        order.push(v);
        permute_within(g, cells, cell, remaining - 1, order, best);
        order.pop();
        cells[cell].swap(i, remaining - 1);
    }
}

/// One representative per isomorphism class of connected graphs on
/// `1..=max_n` vertices, sorted by vertex count then canonical code.
///
/// Every connected graph has a vertex whose deletion leaves it connected, so
/// each class on `n` vertices arises from one on `n - 1` plus a new vertex.
pub fn connected_graph_catalogue(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 9, "catalogue generation is limited to 9 vertices");
    let mut out = Vec::new();
    if max_n == 0 {
        return out;
    }
    let mut layer = vec![Graph::empty(1)];
    out.extend(layer.iter().cloned());
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next: Vec<(u64, Graph)> = Vec::new();
        for g in &layer {
            let base: Vec<(usize, usize)> = g.edges().collect();
            for mask in 1u32..(1 << (n - 1)) {
                let mut edges = base.clone();
                edges.extend((0..n - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, n - 1)));
                let h = Graph::from_edges(n, edges).expect("extension edges are valid");
                let code = canonical_code(&h);
                if seen.insert(code) {
                    next.push((code, h));
                }
            }
        }
        next.sort_by_key(|(c, _)| *c);
        layer = next.into_iter().map(|(_, g)| g).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_separator;

    #[test]
    fn catalogue_counts_match_known_values() {
        let cat = connected_graph_catalogue(7);
        let counts: Vec<usize> = (1..=7).map(|n| cat.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
        assert!(cat.iter().all(|g| g.is_connected()));
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let mut rng = rng_for(3);
        for seed in 0..5 {
            let g = gnp(9, 0.4, seed);
            let mut perm: Vec<usize> = (0..9).collect();
            perm.shuffle(&mut rng);
            let h = Graph::from_edges(9, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
            assert_eq!(canonical_code(&h), canonical_code(&g));
        }
        assert_ne!(canonical_code(&cycle(6)), canonical_code(&barbell(3, 0)));
    }

    #[test]
    fn fixed_families() {
        let b = barbell(4, 2);
        assert_eq!(b.n(), 10);
        assert!(is_separator(&b, &[4, 5]));
        assert_eq!(brute_force_kappa(&b).unwrap().0, 2);
        assert_eq!(petersen().m(), 15);
        assert!((0..10).all(|v| petersen().degree(v) == 3));
        assert!(random_connected_gnp(30, 0.02, 1).is_connected());
        assert_eq!(gnp(20, 0.3, 7), gnp(20, 0.3, 7));
    }

    #[test]
    fn planted_cuts_are_minimum() {
        let spec = PlantedSpec {
            left: 6,
            separator: 3,
            right: 8,
            density: 0.8,
            attach: 0.5,
        };
        for seed in 0..5 {
            let inst = planted_cut(&spec, seed).unwrap();
            inst.cut.validate(&inst.graph).unwrap();
            assert_eq!(inst.cut.size(), 3);
            assert_eq!(brute_force_kappa(&inst.graph).unwrap().0, 3);
        }
        let big = PlantedSpec {
            left: 30,
            separator: 3,
            right: 40,
            density: 0.3,
            attach: 0.3,
        };
        let inst = planted_cut(&big, 1).unwrap();
        assert_eq!(inst.graph.n(), 73);
        assert!(is_separator(&inst.graph, inst.cut.separator()));
    }
}
