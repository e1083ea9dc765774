//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 internal
//! invariant breach.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bench::{run_bench, to_csv, Algorithm, BenchConfig, Family};
use crate::clique_learner::{cliques_to_graph, learn_cliques};
use crate::error::{Error, Result};
use crate::generator::{random_chordal, random_connected};
use crate::graph::io::{parse_any, to_text, GraphJson};
use crate::graph::{build_join_tree, is_chordal, Clique, Graph};
use crate::imap::{learn_minimal_chordal_imap, verify_chordal_imap};
use crate::learn::{trace_to_text, LearnOptions, LearnStats, ModelClass, TraceEvent};
use crate::oracle::{check_axioms, Axiom, Oracle, SeparationOracle, DEFAULT_AXIOM_CAP};
use crate::recovery::recover_chordal;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "chordal-learn",
    version,
    about = "Learn chordal graphs from independence oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Chordal,
    Connected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    Recover,
    Imap,
    Cliques,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Decomposable,
    GraphIsomorphic,
    Unknown,
}

#[derive(clap::Args, Debug)]
struct LearnArgs {
    /// Hidden graph defining the separation oracle (text or JSON).
    #[arg(long)]
    model: PathBuf,
    /// Result JSON path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trace file path, or `off`.
    #[arg(long, default_value = "off")]
    transcript: String,
    /// Print a one-line query summary to stderr.
    #[arg(long)]
    stats: bool,
    /// Model class the caller vouches for.
    #[arg(long, value_enum, default_value = "decomposable")]
    model_class: ClassArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a seeded random graph in text format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "chordal")]
        kind: Kind,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact recovery of a decomposable model's chordal graph.
    Recover(LearnArgs),
    /// Minimal chordal I-map of a graph-isomorphic model.
    Imap(LearnArgs),
    /// Clique list of a minimal chordal I-map via clique splitting.
    Cliques(LearnArgs),
    /// Check a learned structure against the hidden graph.
    Verify {
        #[arg(long)]
        hidden: PathBuf,
        #[arg(long, conflicts_with = "result", required_unless_present = "result")]
        learned: Option<PathBuf>,
        #[arg(long)]
        result: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check independence axioms of a separation model.
    Axioms {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated subset of C1,C2,C3,C4,C5,C6,C8.
        #[arg(long, default_value = "C1,C2,C3,C4,C5,C6,C8")]
        axioms: String,
        #[arg(long, default_value_t = DEFAULT_AXIOM_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Query-count benchmark over a seeded instance grid (CSV).
    Bench {
        #[arg(long, default_value = "chordal")]
        family: String,
        /// Comma-separated sizes; empty for none.
        #[arg(long, default_value = "10,15,20")]
        sizes: String,
        /// Comma-separated seeds or an inclusive range `a-b`.
        #[arg(long, default_value = "1-20")]
        seeds: String,
        #[arg(long, default_value = "recover,naive")]
        algorithms: String,
        #[arg(long, default_value_t = 4)]
        width: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Add a wall_time_ms column (breaks byte-identical reruns).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Learner result file. `graph` is present for recover/imap, `cliques` and
/// `join_tree` for cliques.
#[derive(Debug, Serialize, Deserialize)]
pub struct ResultFile {
    pub algorithm: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cliques: Option<Vec<Clique>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join_tree: Option<crate::graph::JoinTree>,
    pub stats: LearnStats,
    pub guarantees: crate::learn::Guarantees,
}

impl ResultFile {
    pub fn learned_graph(&self) -> Result<Graph> {
        match (&self.graph, &self.cliques) {
            (Some(g), _) => Graph::try_from(g),
            (None, Some(c)) => Ok(cliques_to_graph(c, self.n)),
            (None, None) => Err(Error::arg("result file has neither `graph` nor `cliques`")),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_any(&fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json_line<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn comma_list<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::arg(format!("bad size `{t}`"))))
        .collect()
}

fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let bad = |t: &str| Error::arg(format!("bad seed `{t}`"));
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match t.split_once('-') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad(t))?;
                let b: u64 = b.trim().parse().map_err(|_| bad(t))?;
                out.extend(a..=b);
            }
            None => out.push(t.parse().map_err(|_| bad(t))?),
        }
    }
    Ok(out)
}

fn learn_command(mode: Mode, args: LearnArgs) -> Result<i32> {
    let hidden = read_graph(&args.model)?;
    let oracle = SeparationOracle::new(hidden);
    let opts = LearnOptions {
        trace: args.transcript != "off",
        model_class: match args.model_class {
            ClassArg::Decomposable => ModelClass::Decomposable,
            ClassArg::GraphIsomorphic => ModelClass::GraphIsomorphic,
            ClassArg::Unknown => ModelClass::Unknown,
        },
    };
    let n = oracle.universe();
    let (file, trace): (ResultFile, Option<Vec<TraceEvent>>) = match mode {
        Mode::Recover | Mode::Imap => {
            let out = if mode == Mode::Recover {
                recover_chordal(&oracle, &opts)?
            } else {
                learn_minimal_chordal_imap(&oracle, &opts)?
            };
            let file = ResultFile {
                algorithm: if mode == Mode::Recover {
                    "recover"
                } else {
                    "imap"
                }
                .into(),
                n,
                graph: Some(GraphJson::from(&out.graph)),
                cliques: None,
                join_tree: None,
                stats: out.stats,
                guarantees: out.guarantees,
            };
            (file, out.trace)
        }
        Mode::Cliques => {
            let out = learn_cliques(&oracle, &opts)?;
            let join_tree = if is_chordal(&out.graph) {
                Some(build_join_tree(&out.cliques)?)
            } else {
                None
            };
            let file = ResultFile {
                algorithm: "cliques".into(),
                n,
                graph: None,
                cliques: Some(out.cliques),
                join_tree,
                stats: out.stats,
                guarantees: out.guarantees,
            };
            (file, out.trace)
        }
    };
    if let Some(t) = &trace {
        fs::write(&args.transcript, trace_to_text(t))?;
    }
    if args.stats {
        let orders: Vec<String> = file
            .stats
            .queries_by_order
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        eprintln!(
            "queries={} by_order={} removed={} fixed={}",
            file.stats.queries_total,
            orders.join(";"),
            file.stats.edges_removed,
            file.stats.edges_fixed()
        );
    }
    emit(args.out.as_deref(), &to_json_line(&file)?)?;
    Ok(EXIT_OK)
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Gen {
            n,
            kind,
            width,
            p,
            extra,
            seed,
            out,
        } => {
            let g = match kind {
                Kind::Chordal => random_chordal(n, width.min(n.max(1)), extra, seed)?,
                Kind::Connected => random_connected(n, p, seed)?,
            };
            emit(out.as_deref(), &to_text(&g))?;
            Ok(EXIT_OK)
        }
        Command::Recover(a) => learn_command(Mode::Recover, a),
        Command::Imap(a) => learn_command(Mode::Imap, a),
        Command::Cliques(a) => learn_command(Mode::Cliques, a),
        Command::Verify {
            hidden,
            learned,
            result,
            mode,
            out,
        } => {
            let hidden = read_graph(&hidden)?;
            let learned = match (learned, result) {
                (Some(p), _) => read_graph(&p)?,
                (None, Some(p)) => {
                    let file: ResultFile = serde_json::from_str(&fs::read_to_string(p)?)?;
                    file.learned_graph()?
                }
                (None, None) => return Err(Error::arg("one of --learned or --result is required")),
            };
            let v = verify_chordal_imap(&hidden, &learned)?;
            let exact = hidden == learned;
            let pass = match mode {
                Mode::Recover => exact,
                Mode::Imap | Mode::Cliques => v.chordal && v.imap && v.minimal,
            };
            let verdict = json!({
                "chordal": v.chordal,
                "imap": v.imap,
                "minimal": v.minimal,
                "exact": exact,
            });
            emit(out.as_deref(), &to_json_line(&verdict)?)?;
            Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Axioms {
            model,
            axioms,
            cap,
            out,
        } => {
            let which: Vec<Axiom> = comma_list(&axioms)?;
            if which.is_empty() {
                return Err(Error::arg("no axioms requested"));
            }
            let oracle = SeparationOracle::new(read_graph(&model)?);
            let report = check_axioms(&oracle, &which, cap)?;
            emit(out.as_deref(), &to_json_line(&report)?)?;
            Ok(if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Bench {
            family,
            sizes,
            seeds,
            algorithms,
            width,
            extra,
            p,
            timing,
            out,
        } => {
            let cfg = BenchConfig {
                family: family.parse::<Family>()?,
                sizes: parse_sizes(&sizes)?,
                seeds: parse_seeds(&seeds)?,
                algorithms: comma_list::<Algorithm>(&algorithms)?,
                width,
                extra,
                p,
                timing,
            };
            let rows = run_bench(&cfg)?;
            emit(out.as_deref(), &to_csv(&rows, timing))?;
            Ok(EXIT_OK)
        }
    }
}
