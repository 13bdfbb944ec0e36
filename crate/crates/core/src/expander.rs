//! Deterministic expanders with a numerically certified second eigenvalue.
//!
//! Graphs are unions of seeded pseudo-random Hamiltonian cycles. Their second
//! eigenvalue is measured with a dense symmetric eigensolver and every
//! eigenpair is checked by its residual. Edge and vertex-expansion guarantees are then
//! derived from the measured value.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::rng_for;
use crate::graph::Graph;

/// Residual bound for accepting an eigenpair.
pub const EIGEN_TOLERANCE: f64 = 1e-9;

/// Slack added to the measured eigenvalue before it enters a guarantee.
const LAMBDA_SLACK: f64 = 1e-9;

/// Doublings of the degree before falling back to the complete graph.
const MAX_DOUBLINGS: usize = 12;

/// Seeds tried per degree; the smallest eigenvalue wins.
const CANDIDATE_ATTEMPTS: usize = 3;

/// Second largest absolute eigenvalue of the random-walk matrix `AD⁻¹`.
///
/// Computed on the similar symmetric matrix `D^{-1/2} A D^{-1/2}`. The
/// trivial eigenvalue 1 is removed once; for bipartite graphs `-1` remains and
/// the result is 1.
pub fn spectral_lambda2(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidArgument("spectral_lambda2 needs at least 2 vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        let w = inv_sqrt[u] * inv_sqrt[v];
        m[(u, v)] = w;
        m[(v, u)] = w;
    }
    let eig = SymmetricEigen::new(m.clone());
    for i in 0..n {
        let vec = eig.eigenvectors.column(i);
        let residual = (&m * vec - vec * eig.eigenvalues[i]).norm();
        if residual > EIGEN_TOLERANCE {
            return Err(Error::Numerical(format!(
                "eigenpair {i} has residual {residual:e} above {EIGEN_TOLERANCE:e}"
            )));
        }
    }
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    if (values[0] - 1.0).abs() > EIGEN_TOLERANCE {
        return Err(Error::Numerical(format!("top eigenvalue {} is not 1", values[0])));
    }
    Ok(values[1..].iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
}

/// A graph together with its measured second eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedExpander {
    pub graph: Graph,
    pub lambda2: f64,
    /// Degree bound of the construction; `n - 1` for the complete graph.
    pub degree: usize,
}

impl CertifiedExpander {
    fn new(graph: Graph, degree: usize) -> Result<Self> {
        let lambda2 = spectral_lambda2(&graph)?;
        Ok(Self {
            graph,
            lambda2,
            degree,
        })
    }

    pub fn complete_graph(n: usize) -> Result<Self> {
        Self::new(Graph::complete(n), n - 1)
    }

    pub fn is_complete(&self) -> bool {
        self.graph.is_complete()
    }

    /// Certifies `E(L, R) ≠ ∅` for all disjoint `L, R` with the given sizes.
    ///
    /// Expander mixing in volume form: an edge exists once
    /// `vol(L)·vol(R) > λ²·vol(V∖L)·vol(V∖R)`. With degrees in
    /// `[d_min, d_max]` it suffices that
    /// `d_min²·|L|·|R| > λ²·d_max²·(n-|L|)·(n-|R|)`.
    pub fn mixing_guarantees_edge(&self, left: usize, right: usize) -> bool {
        let n = self.graph.n();
        if left == 0 || right == 0 || left + right > n {
            return false;
        }
        if self.is_complete() {
            return true;
        }
        let g = &self.graph;
        let dmax = g.max_degree() as f64;
        let dmin = (0..n).map(|v| g.degree(v)).min().unwrap_or(0) as f64;
        let lambda = self.lambda2 + LAMBDA_SLACK;
        let lhs = dmin * dmin * left as f64 * right as f64;
        let rhs = lambda * lambda * dmax * dmax * (n - left) as f64 * (n - right) as f64;
        lhs > rhs
    }

    fn degree_ratio(&self) -> f64 {
        let g = &self.graph;
        let dmin = (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0) as f64;
        dmin / g.max_degree().max(1) as f64
    }

    /// Vertex expansion of sets of at most `α·n` vertices: every such set has
    /// at least `β(α)` times as many outside neighbours.
    ///
    /// With `r = d_min/d_max` and `a = α/r` (an upper bound on the volume
    /// fraction), `β(α) = r/(a + (1-a)λ²) - 1`. For regular graphs this is
    /// `1/(α + (1-α)λ²) - 1`.
    pub fn vertex_expansion_at(&self, alpha: f64) -> f64 {
        let l = (self.lambda2 + LAMBDA_SLACK).min(1.0);
        let r = self.degree_ratio();
        let a = (alpha / r).min(1.0);
        r / (a + (1.0 - a) * l * l) - 1.0
    }

    /// Largest `α` with `β(α) ≥ 2/ε`; negative when none exists.
    fn certified_alpha(&self, eps: f64) -> f64 {
        let l2 = (self.lambda2 + LAMBDA_SLACK).min(1.0).powi(2);
        let r = self.degree_ratio();
        if l2 >= 1.0 {
            return -1.0;
        }
        r * (r * eps / (eps + 2.0) - l2) / (1.0 - l2)
    }
}

/// Circulant with the given offsets.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    let edges = (0..n).flat_map(|v| offsets.iter().map(move |&o| (v, (v + o) % n)));
    Graph::from_edges_dedup(n, edges)
}

/// Union of `cycles` Hamiltonian cycles, each through a permutation drawn from
/// a generator seeded by `seed`. Connected, with degrees between 2 and
/// `2·cycles`.
pub fn cycle_union(n: usize, cycles: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle union needs n >= 3, got {n}")));
    }
    let mut rng = rng_for(seed);
    let mut edges = Vec::with_capacity(n * cycles);
    let mut order: Vec<usize> = (0..n).collect();
    for c in 0..cycles {
        // The first cycle is the identity so the result is connected.
        if c > 0 {
            order.shuffle(&mut rng);
        }
        edges.extend((0..n).map(|i| (order[i], order[(i + 1) % n])));
    }
    Graph::from_edges_dedup(n, edges)
}

fn candidate_seed(n: usize, d: usize, attempt: usize) -> u64 {
    ((n as u64) << 32) ^ ((d as u64) << 8) ^ attempt as u64
}

fn regular_candidate(n: usize, d: usize) -> Result<CertifiedExpander> {
    let cycles = d.div_ceil(2);
    if 2 * cycles + 1 >= n {
        return CertifiedExpander::complete_graph(n);
    }
    let mut best: Option<CertifiedExpander> = None;
    for attempt in 0..CANDIDATE_ATTEMPTS {
        let x = CertifiedExpander::new(cycle_union(n, cycles, candidate_seed(n, d, attempt))?, 2 * cycles)?;
        if best.as_ref().map_or(true, |b| x.lambda2 < b.lambda2) {
            best = Some(x);
        }
    }
    Ok(best.expect("at least one attempt"))
}

/// Expander with degrees at most `2⌈d/2⌉` on `n` vertices; `K_n` when `n ≤ 2d`.
pub fn build_mixing_graph(n: usize, d: usize) -> Result<CertifiedExpander> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("degree must be at least 3, got {d}")));
    }
    if n <= d {
        return Err(Error::InvalidArgument(format!("need n > d, got n = {n}, d = {d}")));
    }
    if n <= 2 * d {
        return CertifiedExpander::complete_graph(n);
    }
    let mut degree = d;
    for _ in 0..MAX_DOUBLINGS {
        match regular_candidate(n, degree) {
            Ok(x) if x.lambda2 < 1.0 - EIGEN_TOLERANCE => return Ok(x),
            Ok(_) | Err(Error::Disconnected) => degree *= 2,
            Err(e) => return Err(e),
        }
        if degree >= n - 1 {
            break;
        }
    }
    CertifiedExpander::complete_graph(n)
}

/// A small-set vertex expander with its certified parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallSetExpander {
    pub expander: CertifiedExpander,
    /// Sets of at most `alpha·n` vertices expand by `beta`.
    pub alpha: f64,
    pub beta: f64,
}

/// Required `α`: sets of up to `ε/20` of the vertices must expand.
pub fn small_set_alpha_target(eps: f64) -> f64 {
    eps / 20.0
}

/// An `(α, 2/ε)`-vertex expander on exactly `n` vertices with `α ≥ ε/20`.
///
/// The degree starts at `⌈4/ε⌉` and doubles until the measured eigenvalue
/// certifies the expansion; the complete graph closes the search.
pub fn build_small_set_expander(n: usize, eps: f64) -> Result<SmallSetExpander> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidArgument(format!("need 0 < eps <= 1, got {eps}")));
    }
    if (n as f64) < 2.0 / eps || n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2/eps, got n = {n}, eps = {eps}")));
    }
    let target = small_set_alpha_target(eps);
    let mut degree = ((4.0 / eps).ceil() as usize).max(3);
    let mut last = (0.0, 0.0);
    for _ in 0..=MAX_DOUBLINGS {
        let x = if degree >= n - 1 {
            CertifiedExpander::complete_graph(n)?
        } else {
            match regular_candidate(n, degree) {
                Ok(x) => x,
                Err(Error::Disconnected) => {
                    degree *= 2;
                    continue;
                }
                Err(e) => return Err(e),
            }
        };
        let alpha = x.certified_alpha(eps).min(1.0);
        let beta = x.vertex_expansion_at(alpha.max(0.0));
        if alpha >= target {
            return Ok(SmallSetExpander {
                expander: contract_to_size(&x.graph, n).map(|g| CertifiedExpander { graph: g, ..x })?,
                alpha,
                beta,
            });
        }
        last = (alpha, beta);
        if x.is_complete() {
            break;
        }
        degree *= 2;
    }
    Err(Error::Infeasible {
        alpha: last.0,
        beta: last.1,
    })
}

/// Contracts consecutive groups of `⌊ρ⌋` or `⌈ρ⌉` vertices, `ρ = n/target`,
/// into single vertices. Edges inside a group vanish, parallel images merge.
pub fn contract_to_size(g: &Graph, target: usize) -> Result<Graph> {
    let n = g.n();
    if target == 0 || target > n {
        return Err(Error::InvalidArgument(format!(
            "target size must be in 1..={n}, got {target}"
        )));
    }
    if target == n {
        return Ok(g.clone());
    }
    let group: Vec<usize> = (0..n)
        .map(|v| {
            // Largest i with floor(i·n/target) <= v.
            ((v + 1) * target - 1) / n
        })
        .collect();
    let edges = g
        .edges()
        .map(|(u, v)| (group[u], group[v]))
        .filter(|(a, b)| a != b);
    Graph::from_edges_dedup(target, edges)
}

/// `min |N(L)|/|L|` over nonempty `L` with `|L| ≤ max_set`, by enumeration.
/// Limited to graphs with at most 64 vertices.
pub fn exhaustive_vertex_expansion(g: &Graph, max_set: usize) -> Result<f64> {
    let n = g.n();
    if n > 64 {
        return Err(Error::TooLarge { n, cap: 64 });
    }
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut best = f64::INFINITY;
    let mut stack: Vec<(usize, u64, u64, usize)> = vec![(0, 0, 0, 0)];
    while let Some((next, set, reach, size)) = stack.pop() {
        if size > 0 {
            let out = (reach & !set).count_ones() as f64;
            best = best.min(out / size as f64);
        }
        if size == max_set {
            continue;
        }
        for v in next..n {
            stack.push((v + 1, set | 1 << v, reach | nbr[v], size + 1));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn lambda2_examples() {
        assert!((spectral_lambda2(&Graph::complete(4)).unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert!((spectral_lambda2(&cycle(6)).unwrap() - 1.0).abs() < 1e-9);
        // C5 has eigenvalues cos(2πj/5); the largest nontrivial modulus is at j = 2.
        let c5 = spectral_lambda2(&cycle(5)).unwrap();
        assert!((c5 - (4.0 * std::f64::consts::PI / 5.0).cos().abs()).abs() < 1e-9);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(spectral_lambda2(&two).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn cycle_union_structure() {
        let g = cycle_union(16, 2, 0).unwrap();
        assert!(g.is_connected());
        assert!((0..16).all(|v| (2..=4).contains(&g.degree(v))));
        assert_eq!(g, cycle_union(16, 2, 0).unwrap());
        let g = circulant(30, &[1, 4, 9]).unwrap();
        assert!((0..30).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn mixing_graph_degree_is_bounded_and_lambda_stays_away_from_one() {
        for n in [50, 100, 200, 400] {
            let x = build_mixing_graph(n, 8).unwrap();
            assert!(!x.is_complete());
            assert!((0..n).all(|v| x.graph.degree(v) <= 8));
            assert!(x.lambda2 < 0.85, "n = {n}: lambda2 = {}", x.lambda2);
        }
    }

    #[test]
    fn mixing_graph_edge_guarantee_is_exhaustively_sound() {
        let x = build_mixing_graph(16, 4).unwrap();
        assert!(x.lambda2 < 0.9, "lambda2 = {}", x.lambda2);
        let g = &x.graph;
        // E(L, R) is empty iff R avoids L ∪ N(L); check the largest such R.
        for mask in 1u32..(1 << 16) {
            let left: Vec<usize> = (0..16).filter(|&v| mask >> v & 1 == 1).collect();
            let blocked = left.len() + g.neighborhood(&left).len();
            let free = 16 - blocked;
            if free > 0 {
                assert!(!x.mixing_guarantees_edge(left.len(), free));
            }
        }
    }

    #[test]
    fn mixing_graph_small_n_is_complete() {
        let x = build_mixing_graph(7, 4).unwrap();
        assert!(x.is_complete());
        assert!(x.mixing_guarantees_edge(1, 1));
        assert!(build_mixing_graph(4, 4).is_err());
        assert!(build_mixing_graph(10, 2).is_err());
    }

    #[test]
    fn mixing_graph_sampled_pairs() {
        let x = build_mixing_graph(64, 8).unwrap();
        let g = &x.graph;
        assert!(x.mixing_guarantees_edge(32, 32));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut checked = 0;
        while checked < 1000 {
            let l = rng.gen_range(1..64);
            let Some(r) = (1..=64 - l).find(|&r| x.mixing_guarantees_edge(l, r)) else {
                continue;
            };
            let r = rng.gen_range(r..=64 - l);
            let mut order: Vec<usize> = (0..64).collect();
            order.shuffle(&mut rng);
            let mut side = [0u8; 64];
            order[..l].iter().for_each(|&v| side[v] = 1);
            order[l..l + r].iter().for_each(|&v| side[v] = 2);
            checked += 1;
            assert!(g.edges().any(|(u, v)| side[u] ^ side[v] == 3));
        }
    }

    #[test]
    fn small_set_expander_formula_examples() {
        let x = CertifiedExpander {
            graph: Graph::complete(4),
            lambda2: 0.9,
            degree: 3,
        };
        assert!((x.vertex_expansion_at(0.05) - (1.0 / 0.8195 - 1.0)).abs() < 1e-6);
        let x = CertifiedExpander { lambda2: 0.3, ..x };
        assert!((x.vertex_expansion_at(0.05) - (1.0 / 0.1355 - 1.0)).abs() < 1e-6);
    }

    #[test]
    fn expansion_bound_holds_on_irregular_graphs() {
        for seed in 0..6 {
            let g = cycle_union(18, 3, seed).unwrap();
            let x = CertifiedExpander::new(g, 6).unwrap();
            for max_set in 1..=5 {
                let claimed = x.vertex_expansion_at(max_set as f64 / 18.0);
                let measured = exhaustive_vertex_expansion(&x.graph, max_set).unwrap();
                assert!(measured >= claimed - 1e-9, "seed {seed}, size {max_set}: {measured} < {claimed}");
            }
        }
    }

    #[test]
    fn small_set_expander_certificates_hold() {
        for (n, eps) in [(24, 1.0), (24, 0.5), (20, 0.25), (100, 1.0)] {
            let s = build_small_set_expander(n, eps).unwrap();
            assert_eq!(s.expander.graph.n(), n);
            assert!(s.alpha >= eps / 20.0);
            assert!(s.beta >= 2.0 / eps - 1e-9);
            if n <= 24 {
                let max_set = (s.alpha * n as f64).floor() as usize;
                if max_set > 0 {
                    let measured = exhaustive_vertex_expansion(&s.expander.graph, max_set).unwrap();
                    assert!(measured >= s.beta - 1e-9, "n = {n}, eps = {eps}: {measured} < {}", s.beta);
                }
            }
        }
        assert!(build_small_set_expander(3, 0.5).is_err());
        assert!(build_small_set_expander(30, 0.0).is_err());
    }

    #[test]
    fn contraction_examples() {
        let c4 = contract_to_size(&cycle(8), 4).unwrap();
        assert_eq!(c4, cycle(4));
        let g = cycle(9);
        assert_eq!(contract_to_size(&g, 9).unwrap(), g);
        assert!(contract_to_size(&g, 10).is_err());
        // Group sizes are floor or ceil of n/target.
        let h = contract_to_size(&Graph::empty(30), 20).unwrap();
        assert_eq!(h.n(), 20);
        let group: Vec<usize> = (0..30).map(|v| ((v + 1) * 20 - 1) / 30).collect();
        for i in 0..20 {
            let size = group.iter().filter(|&&x| x == i).count();
            assert!(size == 1 || size == 2);
        }
    }

    #[test]
    fn contraction_transfers_expansion() {
        let x = build_mixing_graph(30, 6).unwrap();
        let input_max = 6;
        let input = exhaustive_vertex_expansion(&x.graph, input_max).unwrap();
        let h = contract_to_size(&x.graph, 20).unwrap();
        // rho = 1.5: sets of up to input_max/2 output vertices pull back to at
        // most input_max input vertices, and expansion drops by at most 1/2.
        let output = exhaustive_vertex_expansion(&h, input_max / 2).unwrap();
        assert!(output >= input / 2.0 - 1e-12, "{output} < {input}/2");
    }

    #[test]
    fn exhaustive_expansion_small_cases() {
        // In C6 a single vertex has 2 outside neighbours, an arc of three has 2.
        assert!((exhaustive_vertex_expansion(&cycle(6), 1).unwrap() - 2.0).abs() < 1e-12);
        assert!((exhaustive_vertex_expansion(&cycle(6), 3).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }
}
