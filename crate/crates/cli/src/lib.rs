//! Command implementations behind the `vconn` binary.
//!
//! Each `cmd_*` function returns a [`CliResult`] on success or a [`CliError`]
//! carrying the process exit code. Separators are re-verified before they are
//! reported; a failed check is an internal invariant violation (exit 3).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use vconn_core::bench::{make_finder, parse_ratio, run_benchmark, write_csv, write_jsonl, BenchConfig};
use vconn_core::generators::{barbell, circulant, cycle, path, petersen, planted_cut, random_connected_gnp, gnp, PlantedSpec};
use vconn_core::graph::is_separator;
use vconn_core::oracles::{brute_force_kappa, min_separator_allpairs};
use vconn_core::{
    approx_vertex_mincut, check_k_connectivity, parse_graph, parse_terminals, reduce_terminal_slow, ApproxOutcome,
    DriverStats, Error, FlowLedger, Graph, GraphFormat, KConnOutcome, ParseOptions, ReductionOutcome,
    ReductionParams, ReductionStats, TerminalSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::VertexOutOfRange { .. } | Error::Io(_) => EXIT_IO,
            Error::NotASeparator | Error::Numerical(_) => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliOutcome = std::result::Result<CliResult, CliError>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerSummary {
    pub flow_calls: u64,
    pub instance_edges: u64,
}

impl LedgerSummary {
    fn of(ledger: &FlowLedger) -> Self {
        let s = ledger.snapshot();
        Self {
            flow_calls: s.calls,
            instance_edges: s.instance_edges,
        }
    }
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliResult {
    pub command: String,
    pub outcome: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub separator: Option<Vec<usize>>,
    pub kappa: Option<usize>,
    pub terminals: Option<Vec<usize>>,
    /// Set by `reduce`: the new terminal set is more than half the old one,
    /// so the driver would fall back to all pairs.
    pub halving_fallback: Option<bool>,
    pub records: Option<usize>,
    pub ledger: LedgerSummary,
    pub exit_code: i32,
}

impl CliResult {
    fn new(command: &str, outcome: &str) -> Self {
        Self {
            command: command.into(),
            outcome: outcome.into(),
            n: None,
            m: None,
            separator: None,
            kappa: None,
            terminals: None,
            halving_fallback: None,
            records: None,
            ledger: LedgerSummary::default(),
            exit_code: EXIT_OK,
        }
    }

    fn for_graph(command: &str, outcome: &str, g: &Graph) -> Self {
        Self {
            n: Some(g.n()),
            m: Some(g.m()),
            ..Self::new(command, outcome)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("CliResult serializes")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{}: {}", self.command, self.outcome);
        if let (Some(n), Some(m)) = (self.n, self.m) {
            let _ = write!(out, " (n = {n}, m = {m})");
        }
        out.push('\n');
        if let Some(k) = self.kappa {
            let _ = writeln!(out, "kappa = {k}");
        }
        if let Some(s) = &self.separator {
            let _ = writeln!(out, "separator ({}): {}", s.len(), join(s));
        }
        if let Some(t) = &self.terminals {
            let _ = writeln!(out, "terminals ({}): {}", t.len(), join(t));
        }
        if let Some(h) = self.halving_fallback {
            let _ = writeln!(out, "halving fallback: {}", if h { "yes" } else { "no" });
        }
        if let Some(r) = self.records {
            let _ = writeln!(out, "records: {r}");
        }
        let _ = writeln!(
            out,
            "flow calls: {}, instance edges: {}",
            self.ledger.flow_calls, self.ledger.instance_edges
        );
        out
    }
}

fn join(ids: &[usize]) -> String {
    ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn read_text(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path, format: Option<GraphFormat>) -> std::result::Result<Graph, CliError> {
    let text = read_text(path)?;
    let format = format.unwrap_or_else(|| GraphFormat::from_path(&path.to_string_lossy()));
    parse_graph(&text, format, ParseOptions::default())
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn verified(g: &Graph, s: Vec<usize>) -> std::result::Result<Vec<usize>, CliError> {
    if is_separator(g, &s) {
        Ok(s)
    } else {
        Err(CliError::invariant(format!("reported set {{{}}} is not a separator", join(&s))))
    }
}

/// Accepts `0.25` or `1/4`.
pub fn parse_eps(text: &str) -> std::result::Result<f64, CliError> {
    let value = if text.contains('/') {
        let r = parse_ratio(text).map_err(|e| CliError::usage(e.to_string()))?;
        *r.numer() as f64 / *r.denom() as f64
    } else {
        text.trim()
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("bad eps {text:?}")))?
    };
    if !(value > 0.0 && value <= 1.0) {
        return Err(CliError::usage(format!("eps must satisfy 0 < eps <= 1, got {text}")));
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum KappaMode {
    /// Subset enumeration, limited to small graphs.
    Exact,
    #[default]
    AllPairs,
}

pub fn cmd_kappa(graph: &Path, mode: KappaMode, format: Option<GraphFormat>) -> CliOutcome {
    let g = load_graph(graph, format)?;
    let ledger = FlowLedger::new();
    let mut res = CliResult::for_graph("kappa", "kappa", &g);
    match mode {
        KappaMode::Exact => {
            let (kappa, cut) = brute_force_kappa(&g)?;
            res.kappa = Some(kappa);
            if let Some(cut) = cut {
                res.separator = Some(verified(&g, cut.separator().to_vec())?);
            }
        }
        KappaMode::AllPairs => match min_separator_allpairs(&g, &ledger)? {
            Some(s) => {
                res.kappa = Some(s.len());
                res.separator = Some(verified(&g, s)?);
            }
            None => res.kappa = Some(g.n().saturating_sub(1)),
        },
    }
    if res.separator.is_none() {
        res.outcome = "complete".into();
    }
    res.ledger = LedgerSummary::of(&ledger);
    Ok(res)
}

/// Reduction parameters and finder shared by `check-k` and `reduce`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionFlags {
    pub phi: Option<String>,
    pub phi_bar: Option<String>,
    pub finder: String,
}

impl Default for ReductionFlags {
    fn default() -> Self {
        Self {
            phi: None,
            phi_bar: None,
            finder: "heuristic".into(),
        }
    }
}

impl ReductionFlags {
    fn params(&self, n: usize, k: usize) -> std::result::Result<ReductionParams, CliError> {
        let usage = |e: Error| CliError::usage(e.to_string());
        match (&self.phi, &self.phi_bar) {
            (None, None) => ReductionParams::default_for(n, k).map_err(usage),
            (Some(a), Some(b)) => {
                ReductionParams::new(k, parse_ratio(a).map_err(usage)?, parse_ratio(b).map_err(usage)?).map_err(usage)
            }
            _ => Err(CliError::usage("--phi and --phibar must be given together")),
        }
    }
}

pub fn cmd_check_k(graph: &Path, k: usize, flags: &ReductionFlags, format: Option<GraphFormat>) -> CliOutcome {
    if k == 0 {
        return Err(CliError::usage("k must be at least 1"));
    }
    let g = load_graph(graph, format)?;
    let params = flags.params(g.n(), k)?;
    let finder = make_finder(&flags.finder).map_err(|e| CliError::usage(e.to_string()))?;
    let ledger = FlowLedger::new();
    let mut stats = DriverStats::default();
    let out = check_k_connectivity(&g, &params, finder.as_ref(), &ledger, &mut stats)?;
    let mut res = CliResult::for_graph("check-k", "", &g);
    match out {
        KConnOutcome::Separator(s) => {
            res.outcome = "separator".into();
            res.separator = Some(verified(&g, s)?);
        }
        KConnOutcome::KConnected => res.outcome = "k-connected".into(),
        KConnOutcome::Disconnected => {
            res.outcome = "disconnected".into();
            res.separator = Some(Vec::new());
            res.kappa = Some(0);
        }
        KConnOutcome::CompleteGraph { kappa } => {
            res.outcome = "complete".into();
            res.kappa = Some(kappa);
        }
    }
    res.ledger = LedgerSummary::of(&ledger);
    Ok(res)
}

pub fn cmd_approx(graph: &Path, eps: &str, format: Option<GraphFormat>) -> CliOutcome {
    let eps = parse_eps(eps)?;
    let g = load_graph(graph, format)?;
    let ledger = FlowLedger::new();
    let mut res = CliResult::for_graph("approx", "", &g);
    match approx_vertex_mincut(&g, eps, &ledger)? {
        ApproxOutcome::Separator {
            separator,
            from_min_degree,
            ..
        } => {
            res.outcome = if from_min_degree { "min-degree-neighbourhood" } else { "separator" }.into();
            res.separator = Some(verified(&g, separator)?);
        }
        ApproxOutcome::Complete { kappa } => {
            res.outcome = "complete".into();
            res.kappa = Some(kappa);
        }
        ApproxOutcome::Disconnected => {
            res.outcome = "disconnected".into();
            res.separator = Some(Vec::new());
            res.kappa = Some(0);
        }
    }
    res.ledger = LedgerSummary::of(&ledger);
    Ok(res)
}

pub fn cmd_reduce(
    graph: &Path,
    terminals: &Path,
    k: usize,
    flags: &ReductionFlags,
    format: Option<GraphFormat>,
) -> CliOutcome {
    if k == 0 {
        return Err(CliError::usage("k must be at least 1"));
    }
    let g = load_graph(graph, format)?;
    let text = read_text(terminals)?;
    let invalid = |e: Error| CliError::usage(format!("invalid terminals: {e}"));
    let ids = parse_terminals(&text, g.n()).map_err(invalid)?;
    let t = TerminalSet::new(g.n(), ids).map_err(invalid)?;
    let params = flags.params(g.n(), k)?;
    let finder = make_finder(&flags.finder).map_err(|e| CliError::usage(e.to_string()))?;
    let ledger = FlowLedger::new();
    let mut stats = ReductionStats::default();
    let out = reduce_terminal_slow(&g, &t, &params, finder.as_ref(), &ledger, &mut stats)?;
    let mut res = CliResult::for_graph("reduce", "", &g);
    match out {
        ReductionOutcome::Separator(s) => {
            res.outcome = "separator".into();
            res.separator = Some(verified(&g, s)?);
        }
        ReductionOutcome::NewTerminals(next) => {
            res.outcome = "new-terminals".into();
            res.halving_fallback = Some(2 * next.len() > t.len());
            res.terminals = Some(next.into_vec());
        }
    }
    res.ledger = LedgerSummary::of(&ledger);
    Ok(res)
}

/// Runs a benchmark config and writes JSON lines to `out`, plus CSV when asked.
pub fn cmd_bench(config: &Path, out: &Path, csv: Option<&Path>, threads: Option<usize>) -> CliOutcome {
    let text = read_text(config)?;
    let mut cfg = BenchConfig::from_toml(&text).map_err(|e| CliError::usage(e.to_string()))?;
    if let Some(t) = threads {
        cfg.threads = t;
    }
    let records = run_benchmark(&cfg).map_err(|e| match e {
        Error::Config(_) | Error::InvalidArgument(_) => CliError::usage(e.to_string()),
        other => CliError::from(other),
    })?;
    let create = |p: &Path| fs::File::create(p).map_err(|e| CliError::io(format!("{}: {e}", p.display())));
    write_jsonl(&records, std::io::BufWriter::new(create(out)?))?;
    if let Some(p) = csv {
        write_csv(&records, create(p)?)?;
    }
    let mut res = CliResult::new("bench", "written");
    res.records = Some(records.len());
    res.ledger = records.iter().fold(LedgerSummary::default(), |acc, r| LedgerSummary {
        flow_calls: acc.flow_calls + r.flow_calls,
        instance_edges: acc.instance_edges + r.instance_edges,
    });
    Ok(res)
}

/// Generator selection for `gen`.
#[derive(Debug, Clone, PartialEq)]
pub enum GenKind {
    Gnp { n: usize, p: f64, seed: u64, connected: bool },
    Planted { spec: PlantedSpec, seed: u64 },
    Barbell { clique: usize, bridge: usize },
    Circulant { n: usize, offsets: Vec<usize> },
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    Petersen,
}

pub fn generate(kind: &GenKind) -> std::result::Result<Graph, CliError> {
    let usage = |e: Error| CliError::usage(e.to_string());
    Ok(match kind {
        GenKind::Gnp { n, p, seed, connected } => {
            if !(0.0..=1.0).contains(p) {
                return Err(CliError::usage(format!("p must lie in [0, 1], got {p}")));
            }
            if *connected {
                random_connected_gnp(*n, *p, *seed)
            } else {
                gnp(*n, *p, *seed)
            }
        }
        GenKind::Planted { spec, seed } => planted_cut(spec, *seed).map_err(usage)?.graph,
        GenKind::Barbell { clique, bridge } => barbell(*clique, *bridge),
        GenKind::Circulant { n, offsets } => {
            if offsets.iter().any(|&o| o == 0 || o >= *n) {
                return Err(CliError::usage("offsets must lie in 1..n"));
            }
            circulant(*n, offsets).map_err(usage)?
        }
        GenKind::Cycle { n } if *n >= 3 => cycle(*n),
        GenKind::Cycle { .. } => return Err(CliError::usage("a cycle needs at least 3 vertices")),
        GenKind::Path { n } => path(*n),
        GenKind::Complete { n } => Graph::complete(*n),
        GenKind::Petersen => petersen(),
    })
}

/// Writes a generated graph to `out`, or returns its text when `out` is `None`.
pub fn cmd_gen(kind: &GenKind, out: Option<&Path>, format: GraphFormat) -> std::result::Result<(CliResult, Option<String>), CliError> {
    let g = generate(kind)?;
    let text = match format {
        GraphFormat::EdgeList => g.to_edge_list(),
        GraphFormat::Dimacs => g.to_dimacs(),
    };
    let res = CliResult::for_graph("gen", "generated", &g);
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::io(format!("{}: {e}", p.display())))?;
            Ok((res, None))
        }
        None => Ok((res, Some(text))),
    }
}
