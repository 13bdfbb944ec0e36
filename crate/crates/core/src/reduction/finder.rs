//! Sparse-cut finders: given a threshold `φ̄`, return a cut of terminal
//! expansion below `φ̄` or report that none was found.

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{components_avoiding, Graph, TerminalSet, VertexCut};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SparseCutResult {
    /// A cut whose terminal expansion is below the requested threshold.
    Sparse(VertexCut),
    /// No sparse cut found. `certified` is true only when the search was
    /// exhaustive, so the graph is a terminal expander at that threshold.
    Expander { certified: bool },
}

pub trait SparseCutFinder {
    fn find(&self, g: &Graph, terminals: &TerminalSet, phi_bar: Ratio<u64>) -> Result<SparseCutResult>;

    fn name(&self) -> &'static str;
}

/// Largest vertex count the exhaustive mode accepts.
pub const BRUTE_SPARSE_MAX_N: usize = 18;

/// Enumerates candidate separators and, for each, the best grouping of the
/// remaining components into two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteSparse {
    max_separator: Option<usize>,
}

impl BruteSparse {
    /// Every vertex subset; exact, limited to `n <= 18`.
    pub fn exhaustive() -> Self {
        Self { max_separator: None }
    }

    /// Separators of at most `limit` vertices, any `n`. Certifies an expander
    /// only when `limit` covers every separator size a sparse cut could have.
    pub fn bounded(limit: usize) -> Self {
        Self {
            max_separator: Some(limit),
        }
    }
}

/// Best cut for a fixed separator, as `(|S|, min side terminal count, cut)`.
fn best_split(g: &Graph, terminals: &TerminalSet, sep: &[usize]) -> Option<(u64, u64, VertexCut)> {
    let n = g.n();
    let mut removed = vec![false; n];
    for &v in sep {
        removed[v] = true;
    }
    let comps = components_avoiding(g, &removed);
    if comps.len() < 2 {
        return None;
    }
    let in_sep = terminals.count_in(sep);
    let counts: Vec<usize> = comps.iter().map(|c| terminals.count_in(c)).collect();
    let total: usize = counts.iter().sum();
    let r = comps.len();

    // full[i][s]: components 1..=i all taken with sum s; partial[i][s]: some skipped.
    let mut full = vec![vec![false; total + 1]; r];
    let mut partial = vec![vec![false; total + 1]; r];
    full[0][0] = true;
    for i in 1..r {
        let a = counts[i];
        for s in 0..=total {
            let take_full = s >= a && full[i - 1][s - a];
            let take_partial = s >= a && partial[i - 1][s - a];
            full[i][s] = take_full;
            partial[i][s] = partial[i - 1][s] || take_partial || full[i - 1][s];
        }
    }
    let best = (0..=total)
        .filter(|&s| partial[r - 1][s])
        .max_by_key(|&s| {
            let left = counts[0] + s;
            (left.min(total - left), std::cmp::Reverse(s))
        })?;
    let min_side = (counts[0] + best).min(total - counts[0] - best) + in_sep;
    if min_side == 0 {
        return None;
    }

    let mut in_left = vec![false; r];
    in_left[0] = true;
    let (mut s, mut all_taken) = (best, false);
    for i in (1..r).rev() {
        let a = counts[i];
        if all_taken {
            in_left[i] = true;
            s -= a;
        } else if partial[i - 1][s] {
        } else if s >= a && partial[i - 1][s - a] {
            in_left[i] = true;
            s -= a;
        } else {
            debug_assert!(full[i - 1][s]);
            all_taken = true;
        }
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        if in_left[i] {
            left.extend_from_slice(c);
        } else {
            right.extend_from_slice(c);
        }
    }
    left.sort_unstable();
    right.sort_unstable();
    let mut sep = sep.to_vec();
    sep.sort_unstable();
    Some((
        sep.len() as u64,
        min_side as u64,
        VertexCut::from_sorted_parts(left, sep, right),
    ))
}

/// Visits every `size`-subset of `0..n` in lexicographic order until `f` returns false.
fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - size + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `a/b < c/d` for non-negative fractions.
fn ratio_less(a: u64, b: u64, c: u64, d: u64) -> bool {
    (a as u128) * (d as u128) < (c as u128) * (b as u128)
}

impl SparseCutFinder for BruteSparse {
    fn find(&self, g: &Graph, terminals: &TerminalSet, phi_bar: Ratio<u64>) -> Result<SparseCutResult> {
        let n = g.n();
        let limit = match self.max_separator {
            None if n > BRUTE_SPARSE_MAX_N => {
                return Err(Error::TooLarge {
                    n,
                    cap: BRUTE_SPARSE_MAX_N,
                })
            }
            None => n.saturating_sub(2),
            Some(l) => l.min(n.saturating_sub(2)),
        };
        let mut best: Option<(u64, u64, VertexCut)> = None;
        for size in 0..=limit {
            for_each_subset(n, size, |sep| {
                if let Some(cand) = best_split(g, terminals, sep) {
                    let better = match &best {
                        None => true,
                        Some((s, m, _)) => ratio_less(cand.0, cand.1, *s, *m),
                    };
                    if better {
                        best = Some(cand);
                    }
                }
                true
            });
        }
        if let Some((s, m, cut)) = best {
            if ratio_less(s, m, *phi_bar.numer(), *phi_bar.denom()) {
                return Ok(SparseCutResult::Sparse(cut));
            }
        }
        let t = terminals.len() as u64;
        let exhaustive = limit + 2 >= n
            || (limit as u64 + 1) * *phi_bar.denom() >= *phi_bar.numer() * t;
        Ok(SparseCutResult::Expander {
            certified: exhaustive,
        })
    }

    fn name(&self) -> &'static str {
        "brute"
    }
}

/// Sweep cuts along BFS and spectral vertex orders. Never certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicSparse {
    /// Number of BFS orders, each started from the last vertex of the previous one.
    pub bfs_orders: usize,
    /// The spectral order is skipped above this vertex count.
    pub spectral_max_n: usize,
}

impl Default for HeuristicSparse {
    fn default() -> Self {
        Self {
            bfs_orders: 4,
            spectral_max_n: 400,
        }
    }
}

fn bfs_order(g: &Graph, start: usize) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in std::iter::once(start).chain(0..n) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

/// Vertices sorted by the Laplacian eigenvector of the second smallest eigenvalue.
fn fiedler_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for v in 0..n {
        lap[(v, v)] = g.degree(v) as f64;
        for &w in g.neighbors(v) {
            lap[(v, w)] = -1.0;
        }
    }
    let eig = SymmetricEigen::new(lap);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vec = eig.eigenvectors.column(idx[1]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vec[a].total_cmp(&vec[b]).then(a.cmp(&b)));
    Some(order)
}

/// Best prefix cut `(prefix, N(prefix), rest)` along `order`.
fn sweep(g: &Graph, terminals: &TerminalSet, order: &[usize]) -> Option<(u64, u64, usize)> {
    let n = g.n();
    let is_t: Vec<bool> = (0..n).map(|v| terminals.contains(v)).collect();
    let total_t = terminals.len();
    let mut in_prefix = vec![false; n];
    let mut hits = vec![0u32; n];
    let (mut boundary, mut t_left, mut t_sep) = (0usize, 0usize, 0usize);
    let mut best: Option<(u64, u64, usize)> = None;
    for (i, &v) in order.iter().enumerate() {
        if hits[v] > 0 {
            boundary -= 1;
            t_sep -= is_t[v] as usize;
        }
        in_prefix[v] = true;
        t_left += is_t[v] as usize;
        for &w in g.neighbors(v) {
            if !in_prefix[w] {
                if hits[w] == 0 {
                    boundary += 1;
                    t_sep += is_t[w] as usize;
                }
                hits[w] += 1;
            }
        }
        let rest = n - (i + 1) - boundary;
        if rest == 0 {
            continue;
        }
        let t_right = total_t - t_left - t_sep;
        let min_side = (t_left + t_sep).min(t_right + t_sep);
        if min_side == 0 {
            continue;
        }
        let cand = (boundary as u64, min_side as u64, i + 1);
        if best.map_or(true, |(s, m, _)| ratio_less(cand.0, cand.1, s, m)) {
            best = Some(cand);
        }
    }
    best
}

fn prefix_cut(g: &Graph, order: &[usize], len: usize) -> VertexCut {
    let n = g.n();
    let mut left = order[..len].to_vec();
    left.sort_unstable();
    let sep = g.neighborhood(&left);
    let mut tag = vec![false; n];
    for &v in left.iter().chain(sep.iter()) {
        tag[v] = true;
    }
    let right: Vec<usize> = (0..n).filter(|&v| !tag[v]).collect();
    VertexCut::from_sorted_parts(left, sep, right)
}

impl SparseCutFinder for HeuristicSparse {
    fn find(&self, g: &Graph, terminals: &TerminalSet, phi_bar: Ratio<u64>) -> Result<SparseCutResult> {
        let n = g.n();
        if n < 3 || terminals.is_empty() {
            return Ok(SparseCutResult::Expander { certified: false });
        }
        let mut orders = Vec::new();
        let mut start = terminals.as_slice()[0];
        for _ in 0..self.bfs_orders.max(1) {
            let order = bfs_order(g, start);
            start = *order.last().unwrap();
            orders.push(order);
        }
        if n <= self.spectral_max_n {
            orders.extend(fiedler_order(g));
        }
        let reversed: Vec<Vec<usize>> = orders.iter().map(|o| o.iter().rev().copied().collect()).collect();
        orders.extend(reversed);

        let mut best: Option<(u64, u64, usize, usize)> = None;
        for (k, order) in orders.iter().enumerate() {
            if let Some((s, m, len)) = sweep(g, terminals, order) {
                if best.map_or(true, |(bs, bm, _, _)| ratio_less(s, m, bs, bm)) {
                    best = Some((s, m, len, k));
                }
            }
        }
        match best {
            Some((s, m, len, k)) if ratio_less(s, m, *phi_bar.numer(), *phi_bar.denom()) => {
                Ok(SparseCutResult::Sparse(prefix_cut(g, &orders[k], len)))
            }
            _ => Ok(SparseCutResult::Expander { certified: false }),
        }
    }

    fn name(&self) -> &'static str {
        "heuristic"
    }
}
