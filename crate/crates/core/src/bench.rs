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

//! Timed runs of the truss fixpoint and their tabular output.
//!
//! Each trial starts from a fresh copy of the input graph and only the
//! support/prune loop is timed. Throughput is reported in millions of input
//! edges per second, where the edge count is that of the unpruned graph.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU16, AtomicU32};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph_io::{canonicalize, EdgeList, GraphIoError, ZeroTerminatedCsr};
use crate::truss::{
    kmax_search, ktruss, Strategy, SupportCounter, SupportWidth, TrussError, TrussOptions,
    TrussResult, TrussRun, Workers,
};

pub const DEFAULT_TRIALS: usize = 10;

pub const CSV_HEADER: [&str; 9] = [
    "graph", "vertices", "edges", "k", "strategy", "threads", "trials", "mean_ms", "me_per_s",
];

/// Which truss parameter to benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSpec {
    Literal(u32),
    /// Resolve the largest non-empty k first (untimed), then benchmark it.
    Kmax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub k: KSpec,
    pub strategy: Strategy,
    pub threads: usize,
    pub trials: usize,
    pub width: SupportWidth,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            k: KSpec::Literal(3),
            strategy: Strategy::Fine,
            threads: Workers::available(),
            trials: DEFAULT_TRIALS,
            width: SupportWidth::Bits32,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub graph_name: String,
    pub num_vertices: u32,
    pub num_edges: u64,
    pub k: u32,
    pub strategy: Strategy,
    pub threads: usize,
    pub trials: usize,
    pub mean_ms: f64,
    pub me_per_s: f64,
}

/// Millions of edges per second for `num_edges` processed in `mean_ms` milliseconds.
pub fn me_per_second(num_edges: u64, mean_ms: f64) -> f64 {
    num_edges as f64 / (mean_ms * 1000.0)
}

/// How many times faster the fine-grained run was than the coarse one.
pub fn speedup(coarse: &BenchRecord, fine: &BenchRecord) -> f64 {
    coarse.mean_ms / fine.mean_ms
}

fn time_loop<C: SupportCounter>(
    csr: &ZeroTerminatedCsr,
    k: u32,
    strategy: Strategy,
    workers: &Workers,
) -> Result<Duration, TrussError> {
    let mut run = TrussRun::<C>::new(csr.clone(), k, strategy, workers)?;
    let start = Instant::now();
    run.run()?;
    Ok(start.elapsed())
}

/// Like [`run_bench`], also returning the truss computed by the warm-up run.
pub fn run_bench_with_result(
    graph_name: &str,
    csr: &ZeroTerminatedCsr,
    config: &BenchConfig,
) -> Result<(BenchRecord, TrussResult), TrussError> {
    if config.trials == 0 {
        return Err(TrussError::InvalidParameter("trials must be >= 1".into()));
    }
    let workers = Workers::new(config.threads)?;
    let options = TrussOptions::new(config.strategy).with_width(config.width);

    let (k, warmup) = match config.k {
        KSpec::Kmax => kmax_search(csr, options, &workers)?,
        KSpec::Literal(k) => (k, ktruss(csr, k, options, &workers)?),
    };

    let mut total = Duration::ZERO;
    for _ in 0..config.trials {
        total += match config.width {
            SupportWidth::Bits32 => time_loop::<AtomicU32>(csr, k, config.strategy, &workers)?,
            SupportWidth::Bits16 => time_loop::<AtomicU16>(csr, k, config.strategy, &workers)?,
        };
    }
    // A zero reading would make the rate infinite; clamp to one nanosecond.
    let mean_ms = (total.as_secs_f64() * 1e3 / config.trials as f64).max(1e-6);
    let num_edges = csr.live_edge_count() as u64;

    let record = BenchRecord {
        graph_name: graph_name.to_owned(),
        num_vertices: csr.num_vertices(),
        num_edges,
        k,
        strategy: config.strategy,
        threads: config.threads,
        trials: config.trials,
        mean_ms,
        me_per_s: me_per_second(num_edges, mean_ms),
    };
    Ok((record, warmup))
}

/// Times `config.trials` independent runs after one untimed warm-up.
pub fn run_bench(
    graph_name: &str,
    csr: &ZeroTerminatedCsr,
    config: &BenchConfig,
) -> Result<BenchRecord, TrussError> {
    run_bench_with_result(graph_name, csr, config).map(|(record, _)| record)
}

/// One record per thread count, in ascending thread order.
///
/// A `Kmax` request is resolved once up front so every record reports the same k.
pub fn thread_sweep(
    graph_name: &str,
    csr: &ZeroTerminatedCsr,
    config: &BenchConfig,
    thread_counts: &[usize],
) -> Result<Vec<BenchRecord>, TrussError> {
    let mut counts = thread_counts.to_vec();
    counts.sort_unstable();
    counts.dedup();
    let Some(&first) = counts.first() else {
        return Ok(Vec::new());
    };

    let k = match config.k {
        KSpec::Literal(k) => k,
        KSpec::Kmax => {
            let options = TrussOptions::new(config.strategy).with_width(config.width);
            kmax_search(csr, options, &Workers::new(first)?)?.0
        }
    };
    counts
        .into_iter()
        .map(|threads| {
            let cfg = BenchConfig {
                k: KSpec::Literal(k),
                threads,
                ..*config
            };
            run_bench(graph_name, csr, &cfg)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            other => Err(format!("unknown format {other:?} (csv|md)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Markdown => "md",
        })
    }
}

fn fields(r: &BenchRecord) -> [String; 9] {
    [
        r.graph_name.clone(),
        r.num_vertices.to_string(),
        r.num_edges.to_string(),
        r.k.to_string(),
        r.strategy.to_string(),
        r.threads.to_string(),
        r.trials.to_string(),
        format!("{:.3}", r.mean_ms),
        format!("{:.3}", r.me_per_s),
    ]
}

pub fn emit_records(records: &[BenchRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(CSV_HEADER).expect("write to memory");
            for r in records {
                writer.write_record(fields(r)).expect("write to memory");
            }
            String::from_utf8(writer.into_inner().expect("flush to memory"))
                .expect("fields are UTF-8")
        }
        OutputFormat::Markdown => {
            let mut out = format!("| {} |\n", CSV_HEADER.join(" | "));
            out.push_str(&format!("|{}\n", "---|".repeat(CSV_HEADER.len())));
            for r in records {
                let row = fields(r).map(|f| f.replace('|', "\\|"));
                out.push_str(&format!("| {} |\n", row.join(" | ")));
            }
            out
        }
    }
}

#[derive(Debug, Error)]
pub enum RecordParseError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected CSV header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}: invalid {field} value {value:?}")]
    Field {
        row: usize,
        field: &'static str,
        value: String,
    },
}

/// Reads records back from [`emit_records`] CSV output.
pub fn parse_csv_records(text: &str) -> Result<Vec<BenchRecord>, RecordParseError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(RecordParseError::Header(header));
    }
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let get = |idx: usize| row.get(idx).unwrap_or("");
        fn parse<T: FromStr>(
            row: usize,
            field: &'static str,
            value: &str,
        ) -> Result<T, RecordParseError> {
            value.parse().map_err(|_| RecordParseError::Field {
                row,
                field,
                value: value.to_owned(),
            })
        }
        let line = i + 1;
        out.push(BenchRecord {
            graph_name: get(0).to_owned(),
            num_vertices: parse(line, "vertices", get(1))?,
            num_edges: parse(line, "edges", get(2))?,
            k: parse(line, "k", get(3))?,
            strategy: parse(line, "strategy", get(4))?,
            threads: parse(line, "threads", get(5))?,
            trials: parse(line, "trials", get(6))?,
            mean_ms: parse(line, "mean_ms", get(7))?,
            me_per_s: parse(line, "me_per_s", get(8))?,
        });
    }
    Ok(out)
}

/// One hub joined to `hub_degree` vertices over a sparse random background.
///
/// The hub takes the smallest label, so after relabeling its whole
/// neighborhood lands in a single upper-triangular row: the worst case for a
/// per-row task split. Background edges are drawn uniformly among
/// `background_vertices` vertices, and hub neighbors are the first
/// `hub_degree` of them.
pub fn hub_graph(
    hub_degree: u32,
    background_vertices: u32,
    background_edges: usize,
    seed: u64,
) -> Result<EdgeList, GraphIoError> {
    if hub_degree == 0 || background_vertices < hub_degree.max(2) {
        return Err(GraphIoError::InvalidInput(format!(
            "need 1 <= hub_degree <= background_vertices (got {hub_degree}, {background_vertices})"
        )));
    }
    let m = u64::from(background_vertices);
    if background_edges as u64 > m * (m - 1) / 2 {
        return Err(GraphIoError::InvalidInput(format!(
            "{background_edges} background edges do not fit on {background_vertices} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(u64, u64)> = (1..=u64::from(hub_degree)).map(|v| (0, v)).collect();
    let mut seen = HashSet::with_capacity(background_edges);
    while seen.len() < background_edges {
        let a = rng.random_range(1..=m);
        let b = rng.random_range(1..=m);
        if a != b && seen.insert((a.min(b), a.max(b))) {
            pairs.push((a, b));
        }
    }
    canonicalize(&pairs)
}
