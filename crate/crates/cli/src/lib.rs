//! Command-line front end: graph file I/O plus the solve / verify / bench /
//! gen subcommands. Exit codes: 0 success, 1 verification mismatch,
//! 2 usage or input error, 3 internal error.

pub mod parse;
pub mod report;

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use negsssp_core::driver::{self, RunTrace, SolverConfig};
use negsssp_core::generators::{
    gen_planted_cycle, gen_potential_shifted, gen_shortcut_gadget, GadgetCase,
};
use negsssp_core::{bellman_ford, Dist, Graph, Rat, Scalar, Source, SsspOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "negsssp", version, about = "Shortest paths with real negative edge weights")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Iterative shortcutting pipeline.
    Shortcut,
    /// Plain Bellman-Ford baseline.
    BellmanFord,
    /// Dijkstra/Bellman-Ford hybrid at the full hop budget.
    Hybrid,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Shortcut => "shortcut",
            Algo::BellmanFord => "bellman-ford",
            Algo::Hybrid => "hybrid",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// 64-bit IEEE floating point.
    Float,
    /// Exact rational arithmetic.
    Rational,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Float => "float",
            Mode::Rational => "rational",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Solve single-source shortest paths on a graph file.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long, value_enum, default_value_t = Algo::Shortcut)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = Mode::Float)]
        mode: Mode,
        /// RNG seed; falls back to NEGSSSP_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Base-case threshold constant.
        #[arg(long, default_value_t = 4.0)]
        c: f64,
        #[arg(long)]
        json: bool,
        /// Include wall-clock phase timings in the JSON trace.
        #[arg(long)]
        timings: bool,
    },
    /// Run shortcut and Bellman-Ford and diff the distance tables.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Rational)]
        mode: Mode,
    },
    /// Generate seeded instances and print a per-algorithm timing table.
    Bench {
        /// Instance spec, e.g. n=40,m=200,negfrac=0.2,seeds=5,range=8
        #[arg(long)]
        gen: String,
        #[arg(long, value_enum, default_value_t = Mode::Float)]
        mode: Mode,
    },
    /// Write a generated graph file.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Generator parameters as key=value pairs, e.g. n=30 m=120 seed=7.
        #[arg(value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Shifted,
    Cycle,
    Gadget,
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("NEGSSSP_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn read_graph_file(path: &PathBuf) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn parse_or_usage<S: Scalar>(text: &str) -> Result<Graph<S>, i32> {
    parse::parse_graph(text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn run_algo<S: Scalar>(
    g: &Graph<S>,
    source: usize,
    algo: Algo,
    cfg: &SolverConfig,
) -> negsssp_core::Result<(SsspOutcome<S>, RunTrace)> {
    match algo {
        Algo::Shortcut => driver::solve(g, Source::Vertex(source), cfg),
        Algo::BellmanFord => Ok((bellman_ford(g, Source::Vertex(source)), RunTrace::default())),
        Algo::Hybrid => {
            let hybrid_cfg = SolverConfig {
                base_case_override: Some(usize::MAX),
                ..cfg.clone()
            };
            driver::solve(g, Source::Vertex(source), &hybrid_cfg)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_cmd<S: Scalar>(
    text: &str,
    source: usize,
    algo: Algo,
    mode: Mode,
    seed: u64,
    c: f64,
    json: bool,
    timings: bool,
) -> i32 {
    let g: Graph<S> = match parse_or_usage(text) {
        Ok(g) => g,
        Err(code) => return code,
    };
    if source >= g.n() {
        eprintln!("error: source {source} out of range (n = {})", g.n());
        return EXIT_USAGE;
    }
    let cfg = SolverConfig { rng_seed: seed, c, ..Default::default() };
    match run_algo(&g, source, algo, &cfg) {
        Ok((outcome, trace)) => {
            if json {
                let report = report::build_report(
                    &outcome,
                    &trace,
                    mode.name(),
                    algo.name(),
                    source,
                    seed,
                    timings,
                );
                println!("{}", report::emit_result_json(&report));
            } else {
                print!("{}", report::emit_result_text(&outcome));
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("internal error: {e}");
            EXIT_INTERNAL
        }
    }
}

fn dist_close<S: Scalar>(a: &Dist<S>, b: &Dist<S>) -> bool {
    match (a.finite(), b.finite()) {
        (None, None) => true,
        (Some(x), Some(y)) => {
            if S::EXACT {
                x == y
            } else {
                let (x, y) = (x.to_f64(), y.to_f64());
                (x - y).abs() <= 1e-6 * x.abs().max(y.abs()).max(1.0)
            }
        }
        _ => false,
    }
}

fn verify_cmd<S: Scalar>(text: &str, source: usize, seed: u64) -> i32 {
    let g: Graph<S> = match parse_or_usage(text) {
        Ok(g) => g,
        Err(code) => return code,
    };
    if source >= g.n() {
        eprintln!("error: source {source} out of range (n = {})", g.n());
        return EXIT_USAGE;
    }
    let cfg = SolverConfig::with_seed(seed);
    let (got, _) = match driver::solve(&g, Source::Vertex(source), &cfg) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("internal error: {e}");
            return EXIT_INTERNAL;
        }
    };
    let want = bellman_ford(&g, Source::Vertex(source));
    match (&got, &want) {
        (SsspOutcome::NegativeCycle(c), SsspOutcome::NegativeCycle(_)) => {
            if c.verify(&g) {
                println!("ok: both algorithms report a negative cycle");
                EXIT_OK
            } else {
                println!("MISMATCH: shortcut cycle witness does not re-sum negative");
                EXIT_MISMATCH
            }
        }
        (SsspOutcome::Distances { dist: a, .. }, SsspOutcome::Distances { dist: b, .. }) => {
            let mut bad = 0;
            for v in 0..g.n() {
                if !dist_close(&a[v], &b[v]) {
                    if bad < 10 {
                        println!("MISMATCH at {v}: shortcut {} vs bellman-ford {}", a[v], b[v]);
                    }
                    bad += 1;
                }
            }
            if bad == 0 {
                println!("ok: {} distances agree", g.n());
                EXIT_OK
            } else {
                println!("{bad} mismatching distances");
                EXIT_MISMATCH
            }
        }
        _ => {
            println!("MISMATCH: one algorithm reports a cycle, the other distances");
            EXIT_MISMATCH
        }
    }
}

struct KvParams(Vec<(String, String)>);

impl KvParams {
    fn parse(items: impl IntoIterator<Item = String>) -> Result<Self, String> {
        let mut out = Vec::new();
        for item in items {
            for piece in item.split(',') {
                if piece.is_empty() {
                    continue;
                }
                let (k, v) = piece
                    .split_once('=')
                    .ok_or_else(|| format!("expected key=value, got '{piece}'"))?;
                out.push((k.trim().to_string(), v.trim().to_string()));
            }
        }
        Ok(KvParams(out))
    }

    fn get<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, String> {
        match self.0.iter().rev().find(|(k, _)| k == key) {
            None => Ok(default),
            Some((_, v)) => v.parse().map_err(|_| format!("bad value for {key}: '{v}'")),
        }
    }
}

fn bench_cmd<S: Scalar>(genspec: &str, mode: Mode) -> i32 {
    let params = match KvParams::parse([genspec.to_string()]) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let parsed = (|| -> Result<_, String> {
        Ok((
            params.get("n", 40usize)?,
            params.get("m", 200usize)?,
            params.get("negfrac", 0.2f64)?,
            params.get("seeds", 5u64)?,
            params.get("range", 8i64)?,
        ))
    })();
    let (n, m, negfrac, seeds, range) = match parsed {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    println!(
        "# mode={} n={} m={} negfrac={} range={}",
        mode.name(),
        n,
        m,
        negfrac,
        range
    );
    println!(
        "{:>5} {:>4} {:>6} {:>4} | {:>12} {:>5} {:>7} {:>6} | {:>12} | {:>12}",
        "seed", "n", "m", "k", "shortcut_ms", "iter", "depth", "added", "bf_ms", "hybrid_ms"
    );
    for seed in 1..=seeds {
        let g: Graph<S> = gen_potential_shifted(n, m, negfrac, range, seed);
        let k = g
            .edges()
            .iter()
            .filter(|e| e.weight.is_negative())
            .map(|e| e.src)
            .collect::<std::collections::HashSet<_>>()
            .len();
        let cfg = SolverConfig::with_seed(seed);
        let t = Instant::now();
        let shortcut = run_algo(&g, 0, Algo::Shortcut, &cfg);
        let shortcut_ms = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let bf = run_algo(&g, 0, Algo::BellmanFord, &cfg);
        let bf_ms = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let hybrid = run_algo(&g, 0, Algo::Hybrid, &cfg);
        let hybrid_ms = t.elapsed().as_secs_f64() * 1e3;
        match (shortcut, bf, hybrid) {
            (Ok((_, trace)), Ok(_), Ok(_)) => {
                let added: usize = trace
                    .iterations
                    .iter()
                    .map(|it| it.edges_added_by_step.iter().sum::<usize>())
                    .sum();
                println!(
                    "{:>5} {:>4} {:>6} {:>4} | {:>12.3} {:>5} {:>7} {:>6} | {:>12.3} | {:>12.3}",
                    seed,
                    n,
                    m,
                    k,
                    shortcut_ms,
                    trace.iterations.len(),
                    trace.recursion_depth,
                    added,
                    bf_ms,
                    hybrid_ms
                );
            }
            (a, b, c) => {
                eprintln!("internal error on seed {seed}: {a:?} {b:?} {c:?}");
                return EXIT_INTERNAL;
            }
        }
    }
    EXIT_OK
}

fn gen_cmd(kind: GenKind, out: Option<PathBuf>, params: Vec<String>) -> i32 {
    let params = match KvParams::parse(params) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let build = || -> Result<Graph<Rat>, String> {
        match kind {
            GenKind::Shifted => {
                let n = params.get("n", 30usize)?;
                let m = params.get("m", 120usize)?;
                let negfrac = params.get("negfrac", 0.2f64)?;
                let range = params.get("range", 8i64)?;
                let seed = params.get("seed", 1u64)?;
                Ok(gen_potential_shifted(n, m, negfrac, range, seed))
            }
            GenKind::Cycle => {
                let n = params.get("n", 30usize)?;
                let m = params.get("m", 120usize)?;
                let len = params.get("len", 4usize)?;
                let weight = params.get("weight", -3i64)?;
                let seed = params.get("seed", 1u64)?;
                Ok(gen_planted_cycle(n, m, len, weight, seed).0)
            }
            GenKind::Gadget => {
                let case = match params.get("case", 1u8)? {
                    1 => GadgetCase::EarlyReentry,
                    2 => GadgetCase::LateExit,
                    3 => GadgetCase::BalancedDetour,
                    other => return Err(format!("case must be 1..=3, got {other}")),
                };
                Ok(gen_shortcut_gadget(case).graph)
            }
        }
    };
    let g = match build() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut buf = Vec::new();
    parse::write_graph(&g, &mut buf).expect("in-memory write");
    match out {
        None => {
            print!("{}", String::from_utf8(buf).expect("ascii graph file"));
            EXIT_OK
        }
        Some(path) => match fs::write(&path, buf) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_USAGE
            }
        },
    }
}

/// Run a parsed command, returning the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.cmd {
        Cmd::Solve { graph, source, algo, mode, seed, c, json, timings } => {
            let text = match read_graph_file(&graph) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let seed = resolve_seed(seed);
            match mode {
                Mode::Float => {
                    solve_cmd::<f64>(&text, source, algo, mode, seed, c, json, timings)
                }
                Mode::Rational => {
                    solve_cmd::<Rat>(&text, source, algo, mode, seed, c, json, timings)
                }
            }
        }
        Cmd::Verify { graph, source, seed, mode } => {
            let text = match read_graph_file(&graph) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let seed = resolve_seed(seed);
            match mode {
                Mode::Float => verify_cmd::<f64>(&text, source, seed),
                Mode::Rational => verify_cmd::<Rat>(&text, source, seed),
            }
        }
        Cmd::Bench { gen, mode } => match mode {
            Mode::Float => bench_cmd::<f64>(&gen, mode),
            Mode::Rational => bench_cmd::<Rat>(&gen, mode),
        },
        Cmd::Gen { kind, out, params } => gen_cmd(kind, out, params),
    }
}
