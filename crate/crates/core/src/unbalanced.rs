//! Detection of minimum separators whose small side holds few terminals.
//!
//! Every member of the splitter family is reduced to a maximal independent
//! set and handed to isolating cuts; the smallest isolating separator over the
//! whole sweep is reported.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::flow::{FlowLedger, LedgerSnapshot};
use crate::graph::{Graph, TerminalSet, VertexCut};
use crate::hashing::{build_terminal_family, FamilyMode, TerminalFamily};
use crate::isolating::{isolating_vertex_cuts, maximal_independent_set};

/// True when the side with fewer terminals (separator included) holds fewer
/// than `beta` of them.
pub fn is_unbalanced_cut(cut: &VertexCut, terminals: &TerminalSet, beta: usize) -> bool {
    let in_sep = terminals.count_in(cut.separator());
    let left = terminals.count_in(cut.left()) + in_sep;
    let right = terminals.count_in(cut.right()) + in_sep;
    left.min(right) < beta
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnbalancedResult {
    /// Smallest separator found, ties broken lexicographically; `None` when
    /// no member produced one (below the cap, if one was given).
    pub separator: Option<Vec<usize>>,
    pub mode: FamilyMode,
    pub family_size: usize,
    /// Members whose independent set had at least two vertices.
    pub members_used: usize,
    /// Flow work spent by this call.
    pub work: LedgerSnapshot,
}

/// Sweeps the splitter family of `terminals`.
///
/// With `cap = Some(k)` flows stop once they reach `k`, so only separators
/// smaller than `k` can be reported.
pub fn unbalanced(
    g: &Graph,
    terminals: &TerminalSet,
    beta: usize,
    cap: Option<usize>,
    ledger: &FlowLedger,
) -> Result<UnbalancedResult> {
    let family = build_terminal_family(terminals, beta)?;
    unbalanced_with_family(g, &family, cap, ledger)
}

pub fn unbalanced_with_family(
    g: &Graph,
    family: &TerminalFamily,
    cap: Option<usize>,
    ledger: &FlowLedger,
) -> Result<UnbalancedResult> {
    let start = ledger.snapshot();
    let mut best: Option<Vec<usize>> = None;
    let mut members_used = 0;
    for member in &family.subsets {
        let independent = maximal_independent_set(g, member);
        if independent.len() < 2 {
            continue;
        }
        members_used += 1;
        // Equal-size candidates are still needed for the lexicographic tie-break.
        let limit = match (&best, cap) {
            (Some(b), Some(c)) => Some(c.min(b.len() + 1)),
            (Some(b), None) => Some(b.len() + 1),
            (None, c) => c,
        };
        let cuts = isolating_vertex_cuts(g, &independent, limit, ledger)?;
        if let Some(s) = cuts.smallest() {
            let better = match &best {
                None => true,
                Some(b) => (s.len(), s) < (b.len(), b.as_slice()),
            };
            if better {
                best = Some(s.to_vec());
            }
        }
    }
    Ok(UnbalancedResult {
        separator: best,
        mode: family.mode,
        family_size: family.len(),
        members_used,
        work: ledger.snapshot().since(&start),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_separator;

    fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn unbalanced_predicate_examples() {
        let g = bowtie();
        let cut = VertexCut::new(&g, vec![0, 1], vec![2], vec![3, 4]).unwrap();
        let all = TerminalSet::all(5);
        assert!(is_unbalanced_cut(&cut, &all, 4));
        assert!(!is_unbalanced_cut(&cut, &all, 3));
        assert!(is_unbalanced_cut(&cut, &TerminalSet::default(), 1));
    }

    #[test]
    fn bowtie_cut_vertex() {
        let ledger = FlowLedger::new();
        let r = unbalanced(&bowtie(), &TerminalSet::all(5), 4, None, &ledger).unwrap();
        assert_eq!(r.separator, Some(vec![2]));
        assert_eq!(r.mode, FamilyMode::AllPairs);
        assert_eq!(r.work, ledger.snapshot());
    }

    #[test]
    fn complete_graph_has_no_separator() {
        let ledger = FlowLedger::new();
        let r = unbalanced(&Graph::complete(5), &TerminalSet::all(5), 5, None, &ledger).unwrap();
        assert_eq!(r.separator, None);
        assert_eq!(r.members_used, 0);
    }

    #[test]
    fn cap_limits_reported_sizes() {
        let ledger = FlowLedger::new();
        // C6 has connectivity 2.
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let t = TerminalSet::all(6);
        let r = unbalanced(&c6, &t, 2, Some(2), &ledger).unwrap();
        assert_eq!(r.separator, None);
        let r = unbalanced(&c6, &t, 2, Some(3), &ledger).unwrap();
        let s = r.separator.unwrap();
        assert_eq!(s, vec![0, 2]);
        assert!(is_separator(&c6, &s));
    }
}
