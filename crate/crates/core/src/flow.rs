//! Unit-vertex-capacity max-flow and minimum vertex separators.
//!
//! Each call builds a private split network: every vertex outside the source
//! and sink sets becomes an `in -> out` arc of capacity 1, every edge becomes a
//! pair of arcs of capacity `n + 1`. The source set and the sink set are each
//! merged into a single node. Blocking-flow augmentation (Dinic) runs on this
//! network; the separator is read off the residual reachability cut, so among
//! the minimum separators the one closest to the source side is returned.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Counts max-flow invocations and the summed size of their instances.
///
/// Instance size is measured on the contracted, unsplit graph: the vertices
/// left after merging the source and sink sets, and the edges that survive
/// the merge. Counters are atomics so concurrent callers never lose updates.
#[derive(Debug, Default)]
pub struct FlowLedger {
    calls: AtomicU64,
    instance_edges: AtomicU64,
    instance_nodes: AtomicU64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerSnapshot {
    pub calls: u64,
    pub instance_edges: u64,
    pub instance_nodes: u64,
}

impl LedgerSnapshot {
    /// Work recorded between `earlier` and `self`.
    pub fn since(&self, earlier: &LedgerSnapshot) -> LedgerSnapshot {
        LedgerSnapshot {
            calls: self.calls - earlier.calls,
            instance_edges: self.instance_edges - earlier.instance_edges,
            instance_nodes: self.instance_nodes - earlier.instance_nodes,
        }
    }
}

impl FlowLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, edges: usize, nodes: usize) {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.instance_edges.fetch_add(edges as u64, Ordering::Relaxed);
        self.instance_nodes.fetch_add(nodes as u64, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        LedgerSnapshot {
            calls: self.calls.load(Ordering::Relaxed),
            instance_edges: self.instance_edges.load(Ordering::Relaxed),
            instance_nodes: self.instance_nodes.load(Ordering::Relaxed),
        }
    }

    /// Only drivers should call this; library routines report deltas.
    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
        self.instance_edges.store(0, Ordering::Relaxed);
        self.instance_nodes.store(0, Ordering::Relaxed);
    }
}

/// Outcome of a (possibly capped) separator computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparatorResult {
    /// A minimum separator, sorted.
    Separator(Vec<usize>),
    /// The flow reached the cap; every separator has at least this many vertices.
    AtLeast(usize),
}

impl SeparatorResult {
    pub fn separator(&self) -> Option<&[usize]> {
        match self {
            SeparatorResult::Separator(s) => Some(s),
            SeparatorResult::AtLeast(_) => None,
        }
    }

    pub fn into_separator(self) -> Option<Vec<usize>> {
        match self {
            SeparatorResult::Separator(s) => Some(s),
            SeparatorResult::AtLeast(_) => None,
        }
    }
}

const SOURCE: usize = 0;
const SINK: usize = 1;

struct Network {
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<u32>,
}

impl Network {
    fn with_nodes(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u32) {
        let e = self.to.len() as u32;
        self.to.push(v as u32);
        self.cap.push(cap);
        self.adj[u].push(e);
        self.to.push(u as u32);
        self.cap.push(0);
        self.adj[v].push(e + 1);
    }

    fn bfs_levels(&self, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[SOURCE] = 0;
        let mut queue = VecDeque::from([SOURCE]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level[SINK] >= 0
    }

    /// Pushes one unit along a shortest augmenting path of the level graph.
    fn augment(&mut self, level: &mut [i32], iter: &mut [usize], path: &mut Vec<u32>) -> bool {
        path.clear();
        let mut u = SOURCE;
        loop {
            if u == SINK {
                for &e in path.iter() {
                    self.cap[e as usize] -= 1;
                    self.cap[(e ^ 1) as usize] += 1;
                }
                return true;
            }
            let mut advanced = false;
            while iter[u] < self.adj[u].len() {
                let e = self.adj[u][iter[u]];
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && level[v] == level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                iter[u] += 1;
            }
            if advanced {
                continue;
            }
            if u == SOURCE {
                return false;
            }
            level[u] = -1;
            let e = path.pop().unwrap();
            u = self.to[(e ^ 1) as usize] as usize;
            iter[u] += 1;
        }
    }

    /// Max-flow value, stopping early once it reaches `cap`.
    fn max_flow(&mut self, cap: usize) -> usize {
        let n = self.adj.len();
        let mut level = vec![-1i32; n];
        let mut iter = vec![0usize; n];
        let mut path = Vec::new();
        let mut flow = 0;
        while flow < cap && self.bfs_levels(&mut level) {
            iter.fill(0);
            while flow < cap && self.augment(&mut level, &mut iter, &mut path) {
                flow += 1;
            }
        }
        flow
    }

    fn residual_reach(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[SOURCE] = true;
        let mut queue = VecDeque::from([SOURCE]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Role of an original vertex in the split network.
#[derive(Clone, Copy)]
enum Role {
    Source,
    Sink,
    Inner(usize),
}

/// Minimum vertex set disjoint from `a ∪ b` whose removal disconnects every
/// vertex of `a` from every vertex of `b`.
///
/// With `cap = Some(c)` the computation stops as soon as `c` disjoint paths
/// are found and reports [`SeparatorResult::AtLeast`]. Every call is recorded
/// in `ledger`.
pub fn min_vertex_separator(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    cap: Option<usize>,
    ledger: &FlowLedger,
) -> Result<SeparatorResult> {
    let n = g.n();
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("source and sink sets must be nonempty".into()));
    }
    let mut role: Vec<Option<Role>> = vec![None; n];
    for (set, r) in [(a, Role::Source), (b, Role::Sink)] {
        for &v in set {
            if v >= n {
                return Err(Error::VertexOutOfRange { line: None, vertex: v, n });
            }
            match (role[v], r) {
                (Some(Role::Source), Role::Sink) => {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {v} is both a source and a sink"
                    )))
                }
                _ => role[v] = Some(r),
            }
        }
    }
    for &u in a {
        if let Some(&w) = g.neighbors(u).iter().find(|&&w| matches!(role[w], Some(Role::Sink))) {
            return Err(Error::NoSeparatorExists {
                edge: (u.min(w), u.max(w)),
            });
        }
    }

    let mut inner = 0;
    let roles: Vec<Role> = role
        .into_iter()
        .map(|r| {
            r.unwrap_or_else(|| {
                inner += 1;
                Role::Inner(inner - 1)
            })
        })
        .collect();
    let in_node = |v: usize| match roles[v] {
        Role::Source => SOURCE,
        Role::Sink => SINK,
        Role::Inner(i) => 2 + 2 * i,
    };
    let out_node = |v: usize| match roles[v] {
        Role::Source => SOURCE,
        Role::Sink => SINK,
        Role::Inner(i) => 3 + 2 * i,
    };

    let big = (n + 1) as u32;
    let mut net = Network::with_nodes(2 + 2 * inner);
    for v in 0..n {
        if let Role::Inner(i) = roles[v] {
            net.add_arc(2 + 2 * i, 3 + 2 * i, 1);
        }
    }
    let mut kept_edges = 0;
    for (u, v) in g.edges() {
        let (ou, iv, ov, iu) = (out_node(u), in_node(v), out_node(v), in_node(u));
        if ou == ov && ou < 2 {
            continue; // both endpoints merged into the same terminal node
        }
        kept_edges += 1;
        if ou != SINK && iv != SOURCE {
            net.add_arc(ou, iv, big);
        }
        if ov != SINK && iu != SOURCE {
            net.add_arc(ov, iu, big);
        }
    }
    ledger.record(kept_edges, inner + 2);

    let limit = cap.unwrap_or(usize::MAX);
    let flow = net.max_flow(limit);
    if cap.is_some_and(|c| flow >= c) {
        return Ok(SeparatorResult::AtLeast(limit));
    }
    let reach = net.residual_reach();
    let sep: Vec<usize> = (0..n)
        .filter(|&v| match roles[v] {
            Role::Inner(i) => reach[2 + 2 * i] && !reach[3 + 2 * i],
            _ => false,
        })
        .collect();
    debug_assert_eq!(sep.len(), flow, "max-flow value must equal separator size");
    debug_assert!(crate::graph::separates(g, &sep, a, b));
    Ok(SeparatorResult::Separator(sep))
}

/// Local vertex connectivity `κ(u, v)`: the minimum separator size for a
/// nonadjacent pair, `n - 1` for an adjacent pair.
pub fn kappa_pair(g: &Graph, u: usize, v: usize, ledger: &FlowLedger) -> Result<usize> {
    if u == v {
        return Err(Error::InvalidArgument("kappa_pair needs two distinct vertices".into()));
    }
    if g.has_edge(u, v) {
        return Ok(g.n() - 1);
    }
    match min_vertex_separator(g, &[u], &[v], None, ledger)? {
        SeparatorResult::Separator(s) => Ok(s.len()),
        SeparatorResult::AtLeast(_) => unreachable!("uncapped flow"),
    }
}
