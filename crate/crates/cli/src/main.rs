use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vconn_cli::{
    cmd_approx, cmd_bench, cmd_check_k, cmd_gen, cmd_kappa, cmd_reduce, CliError, CliResult, GenKind, KappaMode,
    ReductionFlags, EXIT_OK, EXIT_USAGE,
};
use vconn_core::generators::PlantedSpec;
use vconn_core::GraphFormat;

#[derive(Parser)]
#[command(name = "vconn", version, about = "Vertex connectivity: exact checks, approximation, oracles and benchmarks")]
struct Cli {
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for benchmark runs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Input graph format; guessed from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Dimacs,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Edgelist => GraphFormat::EdgeList,
            FormatArg::Dimacs => GraphFormat::Dimacs,
        }
    }
}

#[derive(Args)]
struct ReductionArgs {
    /// Expansion parameter as a fraction, e.g. 1/49.
    #[arg(long)]
    phi: Option<String>,
    /// Sparse-cut threshold as a fraction; must exceed phi and stay below 1/2.
    #[arg(long)]
    phibar: Option<String>,
    /// heuristic, brute or bounded:<limit>.
    #[arg(long, default_value = "heuristic")]
    finder: String,
}

impl From<ReductionArgs> for ReductionFlags {
    fn from(a: ReductionArgs) -> Self {
        ReductionFlags {
            phi: a.phi,
            phi_bar: a.phibar,
            finder: a.finder,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact vertex connectivity with a witness separator.
    Kappa {
        graph: PathBuf,
        /// Enumerate vertex subsets (at most 20 vertices).
        #[arg(long, conflicts_with = "allpairs")]
        exact: bool,
        /// Minimum over all nonadjacent pair flows (default).
        #[arg(long)]
        allpairs: bool,
    },
    /// Decide whether the graph is k-vertex-connected.
    CheckK {
        graph: PathBuf,
        k: usize,
        #[command(flatten)]
        reduction: ReductionArgs,
    },
    /// A separator of size at most (1 + eps) times the connectivity.
    Approx {
        graph: PathBuf,
        /// Accuracy in (0, 1], as a decimal or a fraction.
        eps: String,
    },
    /// One round of terminal reduction.
    Reduce {
        graph: PathBuf,
        /// One vertex id per line, '#' comments allowed.
        terminals: PathBuf,
        k: usize,
        #[command(flatten)]
        reduction: ReductionArgs,
    },
    /// Run a benchmark config and write JSON lines (and optionally CSV).
    Bench {
        config: PathBuf,
        #[arg(long, default_value = "bench.jsonl")]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a generated graph.
    Gen {
        #[command(subcommand)]
        kind: GenCommand,
        /// Output file; standard output when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Write DIMACS instead of an edge list.
        #[arg(long, global = true)]
        dimacs: bool,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    Gnp {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Chain components together.
        #[arg(long)]
        connected: bool,
    },
    /// Random sides joined through a separator verified to be minimum.
    Planted {
        left: usize,
        separator: usize,
        right: usize,
        #[arg(long, default_value_t = 0.7)]
        density: f64,
        #[arg(long, default_value_t = 0.5)]
        attach: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Barbell {
        clique: usize,
        bridge: usize,
    },
    Circulant {
        n: usize,
        #[arg(value_delimiter = ',', required = true)]
        offsets: Vec<usize>,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Petersen,
}

impl From<GenCommand> for GenKind {
    fn from(c: GenCommand) -> Self {
        match c {
            GenCommand::Gnp { n, p, seed, connected } => GenKind::Gnp { n, p, seed, connected },
            GenCommand::Planted {
                left,
                separator,
                right,
                density,
                attach,
                seed,
            } => GenKind::Planted {
                spec: PlantedSpec {
                    left,
                    separator,
                    right,
                    density,
                    attach,
                },
                seed,
            },
            GenCommand::Barbell { clique, bridge } => GenKind::Barbell { clique, bridge },
            GenCommand::Circulant { n, offsets } => GenKind::Circulant { n, offsets },
            GenCommand::Cycle { n } => GenKind::Cycle { n },
            GenCommand::Path { n } => GenKind::Path { n },
            GenCommand::Complete { n } => GenKind::Complete { n },
            GenCommand::Petersen => GenKind::Petersen,
        }
    }
}

fn run(cli: Cli) -> Result<(CliResult, Option<String>), CliError> {
    let format = cli.format.map(GraphFormat::from);
    let plain = |r: CliResult| (r, None);
    match cli.command {
        Command::Kappa { graph, exact, .. } => {
            let mode = if exact { KappaMode::Exact } else { KappaMode::AllPairs };
            cmd_kappa(&graph, mode, format).map(plain)
        }
        Command::CheckK { graph, k, reduction } => cmd_check_k(&graph, k, &reduction.into(), format).map(plain),
        Command::Approx { graph, eps } => cmd_approx(&graph, &eps, format).map(plain),
        Command::Reduce {
            graph,
            terminals,
            k,
            reduction,
        } => cmd_reduce(&graph, &terminals, k, &reduction.into(), format).map(plain),
        Command::Bench { config, out, csv } => cmd_bench(&config, &out, csv.as_deref(), cli.threads).map(plain),
        Command::Gen { kind, out, dimacs } => {
            let fmt = if dimacs { GraphFormat::Dimacs } else { GraphFormat::EdgeList };
            cmd_gen(&kind.into(), out.as_deref(), fmt)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok((res, text)) => {
            match text {
                // Generated graphs go to stdout; the summary would corrupt them.
                Some(t) => print!("{t}"),
                None if json => println!("{}", res.to_json()),
                None => print!("{}", res.to_human()),
            }
            ExitCode::from(EXIT_OK as u8)
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({ "error": e.message, "exit_code": e.code }));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
