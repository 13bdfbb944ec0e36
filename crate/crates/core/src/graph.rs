//! Simple undirected graphs, vertex cuts and terminal sets.
//!
//! Vertices are dense ids `0..n`. Adjacency lists are kept sorted so that
//! adjacency queries are a binary search.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        line: None,
                        vertex: x,
                        n,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge {}-{}",
                    u.min(w[0]),
                    u.max(w[0])
                )));
            }
            m2 += list.len();
        }
        Ok(Self { adj, m: m2 / 2 })
    }

    /// Like [`Graph::from_edges`] but silently drops self-loops and repeated edges.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        line: None,
                        vertex: x,
                        n,
                    });
                }
            }
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut m2 = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Self { adj, m: m2 / 2 })
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Self {
            adj,
            m: n * n.saturating_sub(1) / 2,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || components_avoiding(self, &vec![false; self.n()]).len() == 1
    }

    /// Open neighbourhood of a vertex set: vertices outside `set` adjacent to it.
    pub fn neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for &v in set {
            for &w in &self.adj[v] {
                if !inside[w] && !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Subgraph induced by `vertices` (given in any order). Vertex `i` of the
    /// result corresponds to `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m2 = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                }
            }
            adj[i].sort_unstable();
            m2 += adj[i].len();
        }
        Graph { adj, m: m2 / 2 }
    }

    /// Canonical edge-list text: header `n m`, then one `u v` line per edge
    /// with `u < v`, in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(8 * (self.m + 1));
        let _ = writeln!(out, "{} {}", self.n(), self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p edge {} {}", self.n(), self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }
}

/// Connected components of `g` after deleting the vertices flagged in `removed`.
/// Each component is sorted; components are ordered by their smallest vertex.
pub fn components_avoiding(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = removed.to_vec();
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn removal_mask(n: usize, set: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        assert!(v < n, "vertex {v} out of range for n = {n}");
        mask[v] = true;
    }
    mask
}

/// True iff `G - S` has at least two vertices and is disconnected.
pub fn is_separator(g: &Graph, s: &[usize]) -> bool {
    let removed = removal_mask(g.n(), s);
    let rest = removed.iter().filter(|&&r| !r).count();
    if rest < 2 {
        return false;
    }
    // Early exit: BFS from one survivor and stop as soon as coverage is known.
    let start = removed.iter().position(|&r| !r).unwrap();
    let mut seen = removed;
    seen[start] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached < rest
}

/// True iff no vertex of `a` is connected to a vertex of `b` in `G - S`.
pub fn separates(g: &Graph, s: &[usize], a: &[usize], b: &[usize]) -> bool {
    let removed = removal_mask(g.n(), s);
    if a.iter().chain(b).any(|&v| removed[v]) {
        return false;
    }
    let mut seen = removed;
    let mut queue = VecDeque::new();
    for &v in a {
        if !seen[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    b.iter().all(|&v| !seen[v])
}

/// A vertex cut `(L, S, R)`: a partition of `V` with `L`, `R` nonempty and no
/// edge between `L` and `R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexCut {
    left: Vec<usize>,
    separator: Vec<usize>,
    right: Vec<usize>,
}

impl VertexCut {
    /// Checked constructor. Sides are sorted on entry.
    pub fn new(
        g: &Graph,
        mut left: Vec<usize>,
        mut separator: Vec<usize>,
        mut right: Vec<usize>,
    ) -> Result<Self> {
        left.sort_unstable();
        separator.sort_unstable();
        right.sort_unstable();
        let cut = Self {
            left,
            separator,
            right,
        };
        cut.validate(g)?;
        Ok(cut)
    }

    pub(crate) fn from_sorted_parts(left: Vec<usize>, separator: Vec<usize>, right: Vec<usize>) -> Self {
        debug_assert!(left.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(separator.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(right.windows(2).all(|w| w[0] < w[1]));
        Self {
            left,
            separator,
            right,
        }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn separator(&self) -> &[usize] {
        &self.separator
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.separator.len()
    }

    /// Same cut with the two sides exchanged.
    pub fn flipped(&self) -> Self {
        Self {
            left: self.right.clone(),
            separator: self.separator.clone(),
            right: self.left.clone(),
        }
    }

    /// Re-checks the partition and the no-`L`–`R`-edge condition against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        if self.left.is_empty() || self.right.is_empty() {
            return Err(Error::InvalidArgument("cut side is empty".into()));
        }
        let mut side = vec![0u8; n];
        for (tag, part) in [(1u8, &self.left), (2, &self.separator), (3, &self.right)] {
            for &v in part.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { line: None, vertex: v, n });
                }
                if side[v] != 0 {
                    return Err(Error::InvalidArgument(format!("vertex {v} in two parts of the cut")));
                }
                side[v] = tag;
            }
        }
        if let Some(v) = side.iter().position(|&s| s == 0) {
            return Err(Error::InvalidArgument(format!("vertex {v} missing from the cut")));
        }
        for &u in &self.left {
            if let Some(&w) = g.neighbors(u).iter().find(|&&w| side[w] == 3) {
                return Err(Error::NoSeparatorExists { edge: (u.min(w), u.max(w)) });
            }
        }
        Ok(())
    }
}

/// Canonicalises a separator into `(L, S, R)`: `L` is the component of `G - S`
/// holding the smallest surviving vertex, `R` the rest.
pub fn cut_from_separator(g: &Graph, s: &[usize]) -> Result<VertexCut> {
    let removed = removal_mask(g.n(), s);
    let comps = components_avoiding(g, &removed);
    if comps.len() < 2 {
        return Err(Error::NotASeparator);
    }
    let mut sep = s.to_vec();
    sep.sort_unstable();
    sep.dedup();
    let mut right: Vec<usize> = comps[1..].iter().flatten().copied().collect();
    right.sort_unstable();
    Ok(VertexCut::from_sorted_parts(comps[0].clone(), sep, right))
}

/// Minimum-degree vertex, ties broken by smallest id. Panics on the empty graph.
pub fn min_degree_vertex(g: &Graph) -> (usize, usize) {
    assert!(g.n() >= 1, "min_degree_vertex on an empty graph");
    (0..g.n())
        .map(|v| (v, g.degree(v)))
        .min_by_key(|&(v, d)| (d, v))
        .unwrap()
}

/// Sorted, duplicate-free subset of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TerminalSet(Vec<usize>);

impl TerminalSet {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if let Some(&v) = members.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { line: None, vertex: v, n });
        }
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("duplicate terminal {}", w[0])));
        }
        Ok(Self(members))
    }

    pub fn all(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self(members)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Number of members inside `set`.
    pub fn count_in(&self, set: &[usize]) -> usize {
        set.iter().filter(|&&v| self.contains(v)).count()
    }
}
