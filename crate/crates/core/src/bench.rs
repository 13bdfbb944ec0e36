//! Benchmark harness: generated instances, algorithm runs and ledger records.
//!
//! A config lists instance generators, seeds and algorithms. Every
//! (instance, seed, algorithm) triple produces one [`BenchRecord`]; records
//! are ordered by instance, then seed, then algorithm, whatever the thread
//! count.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::approx::{approx_vertex_mincut, ApproxOutcome};
use crate::error::{Error, Result};
use crate::flow::FlowLedger;
use crate::generators::{barbell, circulant, gnp, planted_cut, random_connected_gnp, PlantedSpec};
use crate::graph::Graph;
use crate::oracles::{brute_force_kappa, kappa_baseline_allpairs, kappa_even};
use crate::reduction::finder::{BruteSparse, HeuristicSparse, SparseCutFinder};
use crate::reduction::{check_k_connectivity, DriverStats, KConnOutcome, ReductionParams};

pub const SCHEMA_VERSION: u32 = 1;

pub const ALGORITHMS: &[&str] = &["check-k", "approx", "allpairs", "even", "brute"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Gnp { n: usize, p: f64, #[serde(default)] connected: bool },
    Planted {
        left: usize,
        separator: usize,
        right: usize,
        density: f64,
        attach: f64,
    },
    Barbell { clique: usize, bridge: usize },
    Circulant { n: usize, offsets: Vec<usize> },
}

impl GeneratorSpec {
    pub fn build(&self, seed: u64) -> Result<Graph> {
        Ok(match self {
            GeneratorSpec::Gnp { n, p, connected } => {
                if *connected {
                    random_connected_gnp(*n, *p, seed)
                } else {
                    gnp(*n, *p, seed)
                }
            }
            GeneratorSpec::Planted {
                left,
                separator,
                right,
                density,
                attach,
            } => {
                let spec = PlantedSpec {
                    left: *left,
                    separator: *separator,
                    right: *right,
                    density: *density,
                    attach: *attach,
                };
                planted_cut(&spec, seed)?.graph
            }
            GeneratorSpec::Barbell { clique, bridge } => barbell(*clique, *bridge),
            GeneratorSpec::Circulant { n, offsets } => circulant(*n, offsets)?,
        })
    }

    fn kind(&self) -> &'static str {
        match self {
            GeneratorSpec::Gnp { .. } => "gnp",
            GeneratorSpec::Planted { .. } => "planted",
            GeneratorSpec::Barbell { .. } => "barbell",
            GeneratorSpec::Circulant { .. } => "circulant",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    /// Defaults to the generator kind and the instance position.
    #[serde(default)]
    pub name: Option<String>,
    #[serde(flatten)]
    pub generator: GeneratorSpec,
    /// Overrides the suite-level `k`.
    #[serde(default)]
    pub k: Option<usize>,
    /// Overrides the suite-level `eps`.
    #[serde(default)]
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default)]
    pub algorithms: Vec<String>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// `"heuristic"`, `"brute"` or `"bounded:<limit>"`.
    #[serde(default = "default_finder")]
    pub finder: String,
    /// Reduction parameters as fractions such as `"9/20"`; both or neither.
    #[serde(default)]
    pub phi: Option<String>,
    #[serde(default)]
    pub phi_bar: Option<String>,
    #[serde(default = "default_threads")]
    pub threads: usize,
    #[serde(default, rename = "instance")]
    pub instances: Vec<InstanceSpec>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}
fn default_k() -> usize {
    2
}
fn default_eps() -> f64 {
    0.5
}
fn default_finder() -> String {
    "heuristic".into()
}
fn default_threads() -> usize {
    1
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: BenchConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self.algorithms.iter().find(|a| !ALGORITHMS.contains(&a.as_str())) {
            return Err(Error::Config(format!(
                "unknown algorithm {a:?}; expected one of {}",
                ALGORITHMS.join(", ")
            )));
        }
        make_finder(&self.finder)?;
        self.phis()?;
        if self.threads == 0 {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    fn phis(&self) -> Result<Option<(Ratio<u64>, Ratio<u64>)>> {
        match (&self.phi, &self.phi_bar) {
            (None, None) => Ok(None),
            (Some(a), Some(b)) => Ok(Some((parse_ratio(a)?, parse_ratio(b)?))),
            _ => Err(Error::Config("phi and phi_bar must be given together".into())),
        }
    }

    fn params(&self, n: usize, k: usize) -> Result<ReductionParams> {
        match self.phis()? {
            Some((phi, phi_bar)) => ReductionParams::new(k, phi, phi_bar),
            None => ReductionParams::default_for(n, k),
        }
    }
}

pub fn parse_ratio(text: &str) -> Result<Ratio<u64>> {
    Ratio::from_str(text.trim()).map_err(|e| Error::Config(format!("bad fraction {text:?}: {e}")))
}

pub fn make_finder(name: &str) -> Result<Box<dyn SparseCutFinder + Send + Sync>> {
    match name {
        "heuristic" => Ok(Box::new(HeuristicSparse::default())),
        "brute" => Ok(Box::new(BruteSparse::exhaustive())),
        _ => match name.strip_prefix("bounded:").map(str::parse::<usize>) {
            Some(Ok(limit)) => Ok(Box::new(BruteSparse::bounded(limit))),
            _ => Err(Error::Config(format!(
                "unknown finder {name:?}; expected heuristic, brute or bounded:<limit>"
            ))),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub schema_version: u32,
    pub instance: String,
    pub generator: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub algo: String,
    /// `k=<k>` or `eps=<eps>`, empty for exact algorithms.
    pub param: String,
    /// Separator size or connectivity; `None` when no separator was reported.
    pub result_size: Option<usize>,
    pub outcome: String,
    pub flow_calls: u64,
    pub instance_edges: u64,
    pub wall_ms: f64,
}

struct Job<'a> {
    name: String,
    spec: &'a InstanceSpec,
    seed: u64,
    algo: &'a str,
}

/// Runs every (instance, seed, algorithm) triple of the config.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for (i, spec) in cfg.instances.iter().enumerate() {
        let name = spec.name.clone().unwrap_or_else(|| format!("{}-{i}", spec.generator.kind()));
        for &seed in &cfg.seeds {
            for algo in &cfg.algorithms {
                jobs.push(Job {
                    name: name.clone(),
                    spec,
                    seed,
                    algo,
                });
            }
        }
    }
    let threads = cfg.threads.min(jobs.len()).max(1);
    if threads == 1 {
        return jobs.iter().map(|j| run_job(cfg, j)).collect();
    }
    let mut slots: Vec<Option<Result<BenchRecord>>> = (0..jobs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunk = jobs.len().div_ceil(threads);
        for (job_chunk, slot_chunk) in jobs.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (job, slot) in job_chunk.iter().zip(slot_chunk.iter_mut()) {
                    *slot = Some(run_job(cfg, job));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("every job ran")).collect()
}

fn run_job(cfg: &BenchConfig, job: &Job) -> Result<BenchRecord> {
    let g = job.spec.generator.build(job.seed)?;
    let k = job.spec.k.unwrap_or(cfg.k);
    let eps = job.spec.eps.unwrap_or(cfg.eps);
    let ledger = FlowLedger::new();
    let start = Instant::now();
    let (param, result_size, outcome) = match job.algo {
        "check-k" => {
            let finder = make_finder(&cfg.finder)?;
            let params = cfg.params(g.n(), k)?;
            let mut stats = DriverStats::default();
            let out = check_k_connectivity(&g, &params, finder.as_ref(), &ledger, &mut stats)?;
            let (size, label) = match out {
                KConnOutcome::Separator(s) => (Some(s.len()), "separator".to_string()),
                KConnOutcome::KConnected => (None, "k-connected".into()),
                KConnOutcome::Disconnected => (Some(0), "disconnected".into()),
                KConnOutcome::CompleteGraph { kappa } => (Some(kappa), "complete".into()),
            };
            (format!("k={k}"), size, label)
        }
        "approx" => {
            let out = approx_vertex_mincut(&g, eps, &ledger)?;
            let (size, label) = match out {
                ApproxOutcome::Separator { separator, from_min_degree, .. } => (
                    Some(separator.len()),
                    if from_min_degree { "min-degree" } else { "separator" }.to_string(),
                ),
                ApproxOutcome::Complete { kappa } => (Some(kappa), "complete".into()),
                ApproxOutcome::Disconnected => (Some(0), "disconnected".into()),
            };
            (format!("eps={eps}"), size, label)
        }
        "allpairs" => (String::new(), Some(kappa_baseline_allpairs(&g, &ledger)?), "kappa".into()),
        "even" => (String::new(), Some(kappa_even(&g, &ledger)?), "kappa".into()),
        "brute" => (String::new(), Some(brute_force_kappa(&g)?.0), "kappa".into()),
        other => return Err(Error::Config(format!("unknown algorithm {other:?}"))),
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    let snap = ledger.snapshot();
    Ok(BenchRecord {
        schema_version: SCHEMA_VERSION,
        instance: job.name.clone(),
        generator: job.spec.generator.kind().into(),
        seed: job.seed,
        n: g.n(),
        m: g.m(),
        algo: job.algo.into(),
        param,
        result_size,
        outcome,
        flow_calls: snap.calls,
        instance_edges: snap.instance_edges,
        wall_ms,
    })
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(records: &[BenchRecord], mut out: W) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_jsonl(text: &str) -> Result<Vec<BenchRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let r: BenchRecord = serde_json::from_str(l).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            if r.schema_version != SCHEMA_VERSION {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("unsupported schema version {}", r.schema_version),
                });
            }
            Ok(r)
        })
        .collect()
}

pub const CSV_COLUMNS: [&str; 9] = [
    "instance",
    "algo",
    "n",
    "m",
    "param",
    "result_size",
    "flow_calls",
    "instance_edges",
    "wall_ms",
];

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for r in records {
        w.write_record([
            r.instance.clone(),
            r.algo.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.param.clone(),
            r.result_size.map_or(String::new(), |s| s.to_string()),
            r.flow_calls.to_string(),
            r.instance_edges.to_string(),
            format!("{:.3}", r.wall_ms),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANTED: &str = r#"
algorithms = ["check-k"]
seeds = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9]
k = 4

[[instance]]
generator = "planted"
left = 6
separator = 3
right = 7
density = 0.8
attach = 0.5
"#;

    #[test]
    fn planted_suite_finds_the_plant() {
        let cfg = BenchConfig::from_toml(PLANTED).unwrap();
        let records = run_benchmark(&cfg).unwrap();
        assert_eq!(records.len(), 10);
        assert!(records.iter().all(|r| r.result_size == Some(3) && r.param == "k=4"));
    }

    #[test]
    fn empty_algorithm_list_gives_no_records() {
        let cfg = BenchConfig::from_toml("[[instance]]\ngenerator = \"barbell\"\nclique = 4\nbridge = 2\n").unwrap();
        assert!(run_benchmark(&cfg).unwrap().is_empty());
    }

    #[test]
    fn config_errors() {
        let bad = "algorithms = [\"magic\"]\n";
        assert!(matches!(BenchConfig::from_toml(bad), Err(Error::Config(_))));
        let bad = "finder = \"oracle\"\n";
        assert!(matches!(BenchConfig::from_toml(bad), Err(Error::Config(_))));
        let bad = "[[instance]]\ngenerator = \"lattice\"\nn = 4\n";
        assert!(matches!(BenchConfig::from_toml(bad), Err(Error::Config(_))));
        let bad = "phi = \"1/10\"\n";
        assert!(matches!(BenchConfig::from_toml(bad), Err(Error::Config(_))));
    }

    #[test]
    fn deterministic_modulo_wall_time_and_threads() {
        let text = r#"
algorithms = ["check-k", "approx", "allpairs", "even"]
seeds = [3, 4]
k = 3
eps = 0.5

[[instance]]
generator = "gnp"
n = 18
p = 0.4
connected = true

[[instance]]
generator = "barbell"
clique = 5
bridge = 2
"#;
        let mut cfg = BenchConfig::from_toml(text).unwrap();
        let strip = |mut v: Vec<BenchRecord>| {
            v.iter_mut().for_each(|r| r.wall_ms = 0.0);
            v
        };
        let a = strip(run_benchmark(&cfg).unwrap());
        cfg.threads = 3;
        let b = strip(run_benchmark(&cfg).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.len(), 2 * 2 * 4);
        // The exact algorithms agree.
        for chunk in a.chunks(4) {
            assert_eq!(chunk[2].result_size, chunk[3].result_size);
        }
    }

    #[test]
    fn jsonl_and_csv_round_trip() {
        let cfg = BenchConfig::from_toml(PLANTED).unwrap();
        let records = run_benchmark(&cfg).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&records, &mut buf).unwrap();
        assert_eq!(read_jsonl(std::str::from_utf8(&buf).unwrap()).unwrap(), records);
        let mut csv_buf = Vec::new();
        write_csv(&records, &mut csv_buf).unwrap();
        let text = String::from_utf8(csv_buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        assert_eq!(text.lines().count(), records.len() + 1);
    }
}
