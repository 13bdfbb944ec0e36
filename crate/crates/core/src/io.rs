//! Edge-list and DIMACS readers.
//!
//! Edge list: header `n m`, then `m` lines `u v` with 0-based ids.
//! DIMACS: `p edge n m` header and `e u v` lines with 1-based ids, `c` comments.
//! In both formats `#` starts a comment that runs to the end of the line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    /// Guess from a file name: `.dimacs`, `.col` and `.clq` are DIMACS, anything else an edge list.
    pub fn from_path(path: &str) -> Self {
        let lower = path.to_ascii_lowercase();
        if [".dimacs", ".col", ".clq"].iter().any(|ext| lower.ends_with(ext)) {
            GraphFormat::Dimacs
        } else {
            GraphFormat::EdgeList
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParseOptions {
    /// Drop self-loops and repeated edges instead of rejecting the input.
    pub dedup: bool,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found `{tok}`")))
}

/// Meaningful lines with their 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub fn parse_graph(text: &str, format: GraphFormat, opts: ParseOptions) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text, opts),
        GraphFormat::Dimacs => parse_dimacs(text, opts),
    }
}

struct EdgeSink {
    n: usize,
    edges: Vec<(usize, usize)>,
    seen: std::collections::HashSet<(usize, usize)>,
    dedup: bool,
}

impl EdgeSink {
    fn new(n: usize, dedup: bool) -> Self {
        Self {
            n,
            edges: Vec::new(),
            seen: Default::default(),
            dedup,
        }
    }

    fn push(&mut self, u: usize, v: usize, line: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    line: Some(line),
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            if self.dedup {
                return Ok(());
            }
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            if self.dedup {
                return Ok(());
            }
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        self.edges.push((u, v));
        Ok(())
    }
}

fn parse_edge_list(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    if header.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n = parse_usize(header[0], hline)?;
    let m = parse_usize(header[1], hline)?;
    let mut sink = EdgeSink::new(n, opts.dedup);
    let mut count = 0;
    let mut last = hline;
    for (line, toks) in lines {
        if toks.len() != 2 {
            return Err(parse_err(line, "edge line must be `u v`"));
        }
        let u = parse_usize(toks[0], line)?;
        let v = parse_usize(toks[1], line)?;
        sink.push(u, v, line)?;
        count += 1;
        last = line;
    }
    if count != m {
        return Err(parse_err(last, format!("header declares {m} edges, found {count}")));
    }
    Graph::from_edges(n, sink.edges)
}

fn parse_dimacs(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut sink: Option<EdgeSink> = None;
    let mut declared_m = 0;
    let mut count = 0;
    let mut last = 1;
    for (line, toks) in content_lines(text) {
        last = line;
        match toks[0] {
            "c" => continue,
            "p" => {
                if sink.is_some() {
                    return Err(parse_err(line, "second `p` line"));
                }
                if toks.len() != 4 || !matches!(toks[1], "edge" | "col") {
                    return Err(parse_err(line, "problem line must be `p edge n m`"));
                }
                let n = parse_usize(toks[2], line)?;
                declared_m = parse_usize(toks[3], line)?;
                sink = Some(EdgeSink::new(n, opts.dedup));
            }
            "e" => {
                let s = sink
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "edge before `p` line"))?;
                if toks.len() != 3 {
                    return Err(parse_err(line, "edge line must be `e u v`"));
                }
                let u = parse_usize(toks[1], line)?;
                let v = parse_usize(toks[2], line)?;
                if u == 0 || v == 0 {
                    return Err(parse_err(line, "DIMACS vertex ids are 1-based"));
                }
                s.push(u - 1, v - 1, line)?;
                count += 1;
            }
            other => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
    }
    let sink = sink.ok_or_else(|| parse_err(last, "missing `p edge n m` line"))?;
    if count != declared_m {
        return Err(parse_err(
            last,
            format!("header declares {declared_m} edges, found {count}"),
        ));
    }
    Graph::from_edges(sink.n, sink.edges)
}

/// Terminal file: one vertex id per line, `#` comments.
pub fn parse_terminals(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line, toks) in content_lines(text) {
        if toks.len() != 1 {
            return Err(parse_err(line, "expected one vertex id per line"));
        }
        let v = parse_usize(toks[0], line)?;
        if v >= n {
            return Err(Error::VertexOutOfRange {
                line: Some(line),
                vertex: v,
                n,
            });
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(text: &str) -> Result<Graph> {
        parse_graph(text, GraphFormat::EdgeList, ParseOptions::default())
    }

    #[test]
    fn edge_list_examples() {
        let p3 = el("3 2\n0 1\n1 2").unwrap();
        assert_eq!((p3.n(), p3.m()), (3, 2));
        assert!(p3.has_edge(0, 1) && p3.has_edge(1, 2) && !p3.has_edge(0, 2));

        assert!(matches!(el("2 1\n0 0"), Err(Error::Parse { line: 2, .. })));

        let k4 = el("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        assert!(k4.is_complete());
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        assert_eq!(
            el("3 1\n# comment\n0 x").unwrap_err(),
            Error::Parse {
                line: 3,
                message: "expected a non-negative integer, found `x`".into()
            }
        );
        assert!(matches!(
            el("3 1\n0 3"),
            Err(Error::VertexOutOfRange { line: Some(2), vertex: 3, n: 3 })
        ));
        assert!(matches!(el("3 2\n0 1"), Err(Error::Parse { .. })));
        assert!(matches!(el("3 2\n0 1\n1 0"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(el(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn dedup_flag() {
        let opts = ParseOptions { dedup: true };
        let g = parse_graph("3 3\n0 1\n1 0\n2 2", GraphFormat::EdgeList, opts).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn dimacs_is_one_based() {
        let text = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        let g = parse_graph(text, GraphFormat::Dimacs, ParseOptions::default()).unwrap();
        assert!(g.is_complete());
        assert_eq!(
            parse_graph(&g.to_dimacs(), GraphFormat::Dimacs, ParseOptions::default()).unwrap(),
            g
        );
        assert!(parse_graph("p edge 2 1\ne 0 1", GraphFormat::Dimacs, ParseOptions::default()).is_err());
        assert!(matches!(
            parse_graph("p edge 2 1\ne 1 3", GraphFormat::Dimacs, ParseOptions::default()),
            Err(Error::VertexOutOfRange { line: Some(2), .. })
        ));
    }

    #[test]
    fn terminals_file() {
        assert_eq!(parse_terminals("# t\n0\n4 # x\n", 5).unwrap(), vec![0, 4]);
        assert!(parse_terminals("5\n", 5).is_err());
    }

    proptest! {
        #[test]
        fn edge_list_roundtrip(n in 1usize..24, raw in proptest::collection::vec((0usize..24, 0usize..24), 0..80)) {
            let edges = raw.into_iter().map(|(u, v)| (u % n, v % n));
            let g = Graph::from_edges_dedup(n, edges).unwrap();
            let text = g.to_edge_list();
            let back = el(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_edge_list(), text);
        }
    }
}
