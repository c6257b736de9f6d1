// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when verification finds a mismatch, 2 for
//! usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bench::{
    emit_records, hub_graph, speedup, thread_sweep, BenchConfig, KSpec, OutputFormat,
};
use crate::graph_io::{
    build_csr, canonicalize, parse_edge_list, read_csr_cache, write_csr_cache, EdgeList,
    GraphIoError, ZeroTerminatedCsr, CACHE_MAGIC,
};
use crate::oracle::{oracle_edge_supports, oracle_kmax, oracle_ktruss, random_graph};
use crate::truss::{kmax_search, ktruss, Strategy, TrussEdge, TrussError, TrussResult, Workers};

/// Environment variable consulted for the default worker count.
pub const THREADS_ENV: &str = "KTRUSS_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<GraphIoError> for CliError {
    fn from(e: GraphIoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TrussError> for CliError {
    fn from(e: TrussError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ktruss",
    version,
    about = "Parallel Eager K-truss decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an edge list and write the binary CSR cache.
    Convert { input: PathBuf, output: PathBuf },
    /// Compute a k-truss and print its edges as `u v support`.
    Truss(TrussArgs),
    /// Check every strategy against the brute-force oracle.
    Verify(VerifyArgs),
    /// Time the truss loop and emit CSV or markdown records.
    Bench(BenchArgs),
    /// Write a synthetic edge list.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct KArgs {
    /// Truss parameter (>= 2).
    #[arg(long)]
    k: Option<u32>,
    /// Use the largest k with a non-empty truss.
    #[arg(long)]
    kmax: bool,
}

impl KArgs {
    fn spec(&self) -> KSpec {
        match self.k {
            Some(k) if !self.kmax => KSpec::Literal(k),
            _ => KSpec::Kmax,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Serial,
    Coarse,
    Fine,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Serial => Strategy::Serial,
            StrategyArg::Coarse => Strategy::Coarse,
            StrategyArg::Fine => Strategy::Fine,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Md,
}

#[derive(Debug, Args)]
struct TrussArgs {
    input: PathBuf,
    #[command(flatten)]
    k: KArgs,
    #[arg(long, value_enum, default_value = "fine")]
    strategy: StrategyArg,
    #[arg(long, env = THREADS_ENV)]
    threads: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    input: PathBuf,
    /// Largest k to check (default: oracle kmax + 1).
    #[arg(long)]
    max_k: Option<u32>,
    #[arg(long, env = THREADS_ENV)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    input: PathBuf,
    #[command(flatten)]
    k: KArgs,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "fine")]
    strategy: Vec<StrategyArg>,
    /// Comma-separated worker counts.
    #[arg(long, value_delimiter = ',', env = THREADS_ENV)]
    threads: Vec<usize>,
    #[arg(long, default_value_t = crate::bench::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphKind {
    /// Erdős–Rényi G(n, p).
    Er,
    /// One high-degree hub over a sparse random background.
    Hub,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "er")]
    kind: GraphKind,
    /// Vertex count (background vertex count for `hub`).
    #[arg(long)]
    vertices: u32,
    #[arg(long, default_value_t = 0.1)]
    probability: f64,
    #[arg(long, default_value_t = 4096)]
    hub_degree: u32,
    /// Background edge count for `hub`.
    #[arg(long, default_value_t = 100_000)]
    edges: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                2
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Convert { input, output } => cmd_convert(&input, &output, stdout),
        Command::Truss(args) => cmd_truss(&args, stdout, stderr),
        Command::Verify(args) => cmd_verify(&args, stdout),
        Command::Bench(args) => cmd_bench(&args, stdout, stderr),
        Command::Generate(args) => cmd_generate(&args, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// A graph loaded from either an edge-list file or a CSR cache.
struct LoadedGraph {
    name: String,
    edges: EdgeList,
    csr: ZeroTerminatedCsr,
}

impl LoadedGraph {
    fn label(&self, v: u32) -> u64 {
        self.edges.original_label(v)
    }
}

fn load_graph(path: &Path) -> Result<LoadedGraph, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map_or_else(|| "graph".to_owned(), |s| s.to_string_lossy().into_owned());
    let (edges, csr) = if bytes.starts_with(&CACHE_MAGIC) {
        let csr = read_csr_cache(bytes.as_slice())?;
        // Caches carry no source labels; relabeled IDs stand in for them.
        (csr.to_edge_list(), csr)
    } else {
        let edges = canonicalize(&parse_edge_list(bytes.as_slice())?)?;
        let csr = build_csr(&edges)?;
        (edges, csr)
    };
    if csr.live_edge_count() == 0 {
        return Err(GraphIoError::EmptyGraph.into());
    }
    Ok(LoadedGraph { name, edges, csr })
}

fn workers(threads: Option<usize>) -> Result<Workers, CliError> {
    Ok(Workers::new(threads.unwrap_or_else(Workers::available))?)
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = fs::File::create(p)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            let mut w = std::io::BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => body(stdout)?,
    }
    Ok(())
}

fn cmd_convert(input: &Path, output: &Path, stdout: &mut dyn Write) -> Result<(), CliError> {
    let graph = load_graph(input)?;
    let file = fs::File::create(output)
        .map_err(|e| CliError::Input(format!("{}: {e}", output.display())))?;
    write_csr_cache(&graph.csr, std::io::BufWriter::new(file))?;
    writeln!(
        stdout,
        "vertices={} edges={} slots={}",
        graph.csr.num_vertices(),
        graph.csr.live_edge_count(),
        graph.csr.total_slots()
    )?;
    Ok(())
}

fn cmd_truss(
    args: &TrussArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let graph = load_graph(&args.input)?;
    let workers = workers(args.threads)?;
    let strategy = Strategy::from(args.strategy);
    let (result, summary) = match args.k.spec() {
        KSpec::Literal(k) => (ktruss(&graph.csr, k, strategy, &workers)?, format!("k={k}")),
        KSpec::Kmax => {
            let (k, r) = kmax_search(&graph.csr, strategy, &workers)?;
            (r, format!("kmax={k}"))
        }
    };
    with_output(args.output.as_deref(), stdout, |w| {
        for e in &result.edges {
            writeln!(w, "{} {} {}", graph.label(e.u), graph.label(e.v), e.support)?;
        }
        Ok(())
    })?;
    writeln!(
        stderr,
        "{summary} kept={} iterations={}",
        result.edges.len(),
        result.iterations
    )?;
    Ok(())
}

fn first_divergence(expected: &[TrussEdge], actual: &[TrussEdge]) -> Option<String> {
    let fmt = |e: Option<&TrussEdge>| match e {
        Some(e) => format!("({} {} support={})", e.u, e.v, e.support),
        None => "none".to_owned(),
    };
    let len = expected.len().max(actual.len());
    (0..len)
        .find(|&i| expected.get(i) != actual.get(i))
        .map(|i| {
            format!(
                "first divergent edge #{i}: expected {}, got {}",
                fmt(expected.get(i)),
                fmt(actual.get(i))
            )
        })
}

fn oracle_result(edges: &EdgeList, k: u32) -> Result<Vec<TrussEdge>, CliError> {
    let kept: Vec<(u32, u32)> = oracle_ktruss(edges, k)?.into_iter().collect();
    let sub = EdgeList::with_identity_labels(edges.num_vertices(), kept)?;
    Ok(oracle_edge_supports(&sub)
        .into_iter()
        .map(|((u, v), support)| TrussEdge { u, v, support })
        .collect())
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let graph = load_graph(&args.input)?;
    let workers = workers(args.threads)?;
    let max_k = match args.max_k {
        Some(k) => k,
        None => oracle_kmax(&graph.edges) + 1,
    };
    let (mut checks, mut failures) = (0, 0);
    for k in 2..=max_k {
        let expected = oracle_result(&graph.edges, k)?;
        for strategy in Strategy::ALL {
            let got = ktruss(&graph.csr, k, strategy, &workers)?;
            checks += 1;
            match first_divergence(&expected, &got.edges) {
                None => writeln!(stdout, "PASS k={k} strategy={strategy}")?,
                Some(diff) => {
                    failures += 1;
                    writeln!(stdout, "FAIL k={k} strategy={strategy}: {diff}")?;
                }
            }
        }
    }
    if failures > 0 {
        return Err(CliError::Verification(format!(
            "{failures} of {checks} checks failed"
        )));
    }
    Ok(())
}

fn cmd_bench(
    args: &BenchArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let graph = load_graph(&args.input)?;
    let mut strategies: Vec<Strategy> = args.strategy.iter().map(|&s| s.into()).collect();
    strategies.dedup();
    let thread_counts = if args.threads.is_empty() {
        vec![Workers::available()]
    } else {
        args.threads.clone()
    };
    let probe = workers(thread_counts.iter().copied().min())?;

    let k = match args.k.spec() {
        KSpec::Literal(k) => k,
        KSpec::Kmax => kmax_search(&graph.csr, strategies[0], &probe)?.0,
    };

    // Every strategy must agree on the truss before anything is timed.
    let mut reference: Option<(Strategy, TrussResult)> = None;
    for &strategy in &strategies {
        let result = ktruss(&graph.csr, k, strategy, &probe)?;
        if let Some((first, expected)) = &reference {
            if let Some(diff) = first_divergence(&expected.edges, &result.edges) {
                return Err(CliError::Verification(format!(
                    "{strategy} disagrees with {first} at k={k}: {diff}"
                )));
            }
        } else {
            reference = Some((strategy, result));
        }
    }

    let mut records = Vec::new();
    for &strategy in &strategies {
        let config = BenchConfig {
            k: KSpec::Literal(k),
            strategy,
            threads: 1,
            trials: args.trials,
            ..BenchConfig::default()
        };
        records.extend(thread_sweep(
            &graph.name,
            &graph.csr,
            &config,
            &thread_counts,
        )?);
    }

    for coarse in records.iter().filter(|r| r.strategy == Strategy::Coarse) {
        if let Some(fine) = records
            .iter()
            .find(|r| r.strategy == Strategy::Fine && r.threads == coarse.threads)
        {
            writeln!(
                stderr,
                "speedup threads={} fine_over_coarse={:.3}",
                coarse.threads,
                speedup(coarse, fine)
            )?;
        }
    }

    let format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Md => OutputFormat::Markdown,
    };
    let text = emit_records(&records, format);
    with_output(args.output.as_deref(), stdout, |w| {
        w.write_all(text.as_bytes())
    })
}

fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (graph, header) = match args.kind {
        GraphKind::Er => (
            random_graph(args.vertices, args.probability, args.seed)?,
            format!(
                "# G(n, p) n={} p={} seed={}",
                args.vertices, args.probability, args.seed
            ),
        ),
        GraphKind::Hub => (
            hub_graph(args.hub_degree, args.vertices, args.edges, args.seed)?,
            format!(
                "# hub degree={} background vertices={} edges={} seed={}",
                args.hub_degree, args.vertices, args.edges, args.seed
            ),
        ),
    };
    with_output(args.output.as_deref(), stdout, |w| {
        writeln!(w, "{header}")?;
        for &(u, v) in graph.edges() {
            writeln!(w, "{} {}", graph.original_label(u), graph.original_label(v))?;
        }
        Ok(())
    })
}
