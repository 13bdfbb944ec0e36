//! Ground-truth connectivity by exhaustive enumeration, and a flow baseline.
//!
//! The enumerating oracles use 64-bit vertex masks, so they accept at most
//! 64 vertices; the default cap is much lower.

use crate::error::{Error, Result};
use crate::flow::{min_vertex_separator, FlowLedger, SeparatorResult};
use crate::graph::{Graph, TerminalSet, VertexCut};

/// Default vertex cap for the enumerating oracles.
pub const DEFAULT_BRUTE_CAP: usize = 20;

const MASK_LIMIT: usize = 64;

struct Masks {
    n: usize,
    nbr: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph, cap: usize) -> Result<Self> {
        let cap = cap.min(MASK_LIMIT);
        if g.n() > cap {
            return Err(Error::TooLarge { n: g.n(), cap });
        }
        let nbr = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        Ok(Self { n: g.n(), nbr })
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Component of `start` inside `allowed`.
    fn component(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.nbr[v] & allowed & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    fn components(&self, allowed: u64) -> Vec<u64> {
        let mut rest = allowed;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component(rest.trailing_zeros() as usize, allowed);
            rest &= !c;
            out.push(c);
        }
        out
    }

    fn is_separator(&self, set: u64) -> bool {
        let rest = self.full() & !set;
        rest != 0 && self.component(rest.trailing_zeros() as usize, rest) != rest
    }
}

fn to_vec(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn from_slice(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &v| m | 1 << v)
}

/// Calls `f` on every `size`-subset of `pool` (a sorted vertex list), in
/// lexicographic order, until it returns `true`.
fn any_subset(pool: &[usize], size: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    if size > pool.len() {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if f(idx.iter().fold(0u64, |m, &i| m | 1 << pool[i])) {
            return true;
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] < pool.len() - size + i) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `κ_G` by enumeration with the default cap.
pub fn brute_force_kappa(g: &Graph) -> Result<(usize, Option<VertexCut>)> {
    brute_force_kappa_with_cap(g, DEFAULT_BRUTE_CAP)
}

/// `κ_G` by enumeration of vertex sets in ascending size, lexicographic
/// within a size. The first separator found is returned with the cut whose
/// left side is the component of its smallest remaining vertex. Complete
/// graphs give `(n - 1, None)`.
///
/// Sizes stop at the minimum degree `δ`: the neighbourhood of a
/// minimum-degree vertex separates any graph that is not complete.
pub fn brute_force_kappa_with_cap(g: &Graph, cap: usize) -> Result<(usize, Option<VertexCut>)> {
    let masks = Masks::new(g, cap)?;
    let n = g.n();
    if g.is_complete() {
        return Ok((n.saturating_sub(1), None));
    }
    let all: Vec<usize> = (0..n).collect();
    let delta = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    for size in 0..=delta {
        let mut found = 0u64;
        if any_subset(&all, size, |s| {
            found = s;
            masks.is_separator(s)
        }) {
            let cut = cut_of(g, &masks, found)?;
            return Ok((size, Some(cut)));
        }
    }
    unreachable!("a non-complete graph has a separator of size at most its minimum degree")
}

fn cut_of(g: &Graph, masks: &Masks, sep: u64) -> Result<VertexCut> {
    let rest = masks.full() & !sep;
    let left = masks.component(rest.trailing_zeros() as usize, rest);
    VertexCut::new(g, to_vec(left), to_vec(sep), to_vec(rest & !left))
}

/// Every separator of exactly `size` vertices, in lexicographic order.
pub fn separators_of_size(g: &Graph, size: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let masks = Masks::new(g, cap)?;
    let all: Vec<usize> = (0..g.n()).collect();
    let mut out = Vec::new();
    any_subset(&all, size, |s| {
        if masks.is_separator(s) {
            out.push(to_vec(s));
        }
        false
    });
    Ok(out)
}

/// Sizes of the components left after deleting `separator`.
pub fn component_sizes(g: &Graph, separator: &[usize]) -> Result<Vec<usize>> {
    let masks = Masks::new(g, MASK_LIMIT)?;
    let allowed = masks.full() & !from_slice(separator);
    Ok(masks.components(allowed).into_iter().map(|c| c.count_ones() as usize).collect())
}

/// Smallest set avoiding `x` and `y` that separates them; `n - 1` when they
/// are adjacent.
pub fn brute_force_pair_kappa(g: &Graph, x: usize, y: usize, cap: usize) -> Result<usize> {
    let masks = Masks::new(g, cap)?;
    let n = g.n();
    if x >= n || y >= n || x == y {
        return Err(Error::InvalidArgument(format!("bad vertex pair ({x}, {y})")));
    }
    if g.has_edge(x, y) {
        return Ok(n - 1);
    }
    let pool: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
    let full = masks.full();
    for size in 0..=g.degree(x).min(g.degree(y)) {
        if any_subset(&pool, size, |s| masks.component(x, full & !s) >> y & 1 == 0) {
            return Ok(size);
        }
    }
    unreachable!("N(x) separates x from a nonadjacent y")
}

/// `κ(T)`: the minimum over unordered terminal pairs of the pair oracle.
pub fn brute_force_steiner_kappa(g: &Graph, terminals: &TerminalSet) -> Result<usize> {
    brute_force_steiner_kappa_with_cap(g, terminals, DEFAULT_BRUTE_CAP)
}

pub fn brute_force_steiner_kappa_with_cap(g: &Graph, terminals: &TerminalSet, cap: usize) -> Result<usize> {
    if terminals.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 terminals".into()));
    }
    let t = terminals.as_slice();
    let mut best = g.n().saturating_sub(1);
    for (i, &x) in t.iter().enumerate() {
        for &y in &t[i + 1..] {
            best = best.min(brute_force_pair_kappa(g, x, y, cap)?);
        }
    }
    Ok(best)
}

/// `κ_G` as the minimum of `κ(u, v)` over all nonadjacent pairs.
pub fn kappa_baseline_allpairs(g: &Graph, ledger: &FlowLedger) -> Result<usize> {
    Ok(match min_separator_allpairs(g, ledger)? {
        Some(s) => s.len(),
        None => g.n().saturating_sub(1),
    })
}

/// A minimum separator by flows over all nonadjacent pairs, the first pair
/// in lexicographic order winning ties. `None` for complete graphs and the
/// empty separator for disconnected ones.
pub fn min_separator_allpairs(g: &Graph, ledger: &FlowLedger) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if !g.is_connected() {
        return Ok(Some(Vec::new()));
    }
    let mut best: Option<Vec<usize>> = None;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let cap = best.as_ref().map(Vec::len);
            if let SeparatorResult::Separator(s) = min_vertex_separator(g, &[u], &[v], cap, ledger)? {
                best = Some(s);
            }
        }
    }
    Ok(best)
}

/// Exact `κ_G` with `O(κ·n)` capped flows.
///
/// Some vertex among the first `κ + 1` avoids a minimum separator; let `v_i`
/// be the first. All earlier ones lie in the separator, so a vertex on the
/// other side has a larger index and the pair `(v_i, v_j)` with `j > i`
/// witnesses `κ`.
pub fn kappa_even(g: &Graph, ledger: &FlowLedger) -> Result<usize> {
    let n = g.n();
    if !g.is_connected() {
        return Ok(0);
    }
    let mut best = n.saturating_sub(1);
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            if let SeparatorResult::Separator(s) = min_vertex_separator(g, &[i], &[j], Some(best), ledger)? {
                best = s.len();
            }
        }
        i += 1;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::kappa_pair;
    use crate::generators::{petersen, random_connected_gnp};
    use crate::graph::is_separator;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_kappa(&Graph::complete(4)).unwrap(), (3, None));
        let (k, cut) = brute_force_kappa(&path(3)).unwrap();
        assert_eq!(k, 1);
        let cut = cut.unwrap();
        assert_eq!((cut.left(), cut.separator(), cut.right()), (&[0][..], &[1][..], &[2][..]));
        let (k, cut) = brute_force_kappa(&petersen()).unwrap();
        assert_eq!(k, 3);
        assert!(is_separator(&petersen(), cut.unwrap().separator()));
        assert_eq!(brute_force_kappa(&path(21)).unwrap_err(), Error::TooLarge { n: 21, cap: 20 });
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(brute_force_kappa(&two).unwrap().0, 0);
    }

    #[test]
    fn steiner_examples() {
        let bowtie = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let t = TerminalSet::new(5, vec![0, 4]).unwrap();
        assert_eq!(brute_force_steiner_kappa(&bowtie, &t).unwrap(), 1);
        let t = TerminalSet::new(5, vec![0, 1]).unwrap();
        assert_eq!(brute_force_steiner_kappa(&bowtie, &t).unwrap(), 4);
        let k4 = Graph::complete(4);
        assert_eq!(brute_force_steiner_kappa(&k4, &TerminalSet::all(4)).unwrap(), 3);
        assert!(brute_force_steiner_kappa(&k4, &TerminalSet::new(4, vec![1]).unwrap()).is_err());
    }

    #[test]
    fn baselines_examples() {
        let ledger = FlowLedger::new();
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(kappa_baseline_allpairs(&c5, &ledger).unwrap(), 2);
        assert_eq!(kappa_baseline_allpairs(&Graph::complete(5), &ledger).unwrap(), 4);
        assert_eq!(kappa_baseline_allpairs(&petersen(), &ledger).unwrap(), 3);
        assert_eq!(kappa_even(&petersen(), &ledger).unwrap(), 3);
    }

    #[test]
    fn oracles_agree_on_random_graphs() {
        for seed in 0..60 {
            let n = 6 + (seed as usize % 9);
            let p = 0.25 + 0.05 * (seed % 10) as f64;
            let g = random_connected_gnp(n, p, seed);
            let ledger = FlowLedger::new();
            let (k, _) = brute_force_kappa(&g).unwrap();
            assert_eq!(kappa_baseline_allpairs(&g, &ledger).unwrap(), k, "seed {seed}");
            assert_eq!(kappa_even(&g, &ledger).unwrap(), k, "seed {seed}");
            if n <= 12 {
                let t = TerminalSet::all(n);
                let mut pairs = n - 1;
                for u in 0..n {
                    for v in u + 1..n {
                        pairs = pairs.min(kappa_pair(&g, u, v, &ledger).unwrap());
                    }
                }
                assert_eq!(brute_force_steiner_kappa(&g, &t).unwrap(), pairs);
            }
        }
    }

    #[test]
    fn separators_of_size_lists_all() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let seps = separators_of_size(&c6, 2, 20).unwrap();
        // Nonadjacent pairs of C6.
        assert_eq!(seps.len(), 9);
        assert_eq!(component_sizes(&c6, &[0, 3]).unwrap(), vec![2, 2]);
    }
}
