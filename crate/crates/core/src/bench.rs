//! Query-count benchmark over seeded instance grids.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::baseline::naive_pc;
use crate::clique_learner::learn_cliques;
use crate::error::{Error, Result};
use crate::generator::{random_chordal, random_connected};
use crate::graph::Graph;
use crate::imap::learn_minimal_chordal_imap;
use crate::learn::LearnOptions;
use crate::oracle::SeparationOracle;
use crate::recovery::recover_chordal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Chordal,
    Connected,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chordal" => Ok(Family::Chordal),
            "connected" => Ok(Family::Connected),
            _ => Err(Error::arg(format!(
                "unknown family `{s}` (chordal|connected)"
            ))),
        }
    }
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Chordal => "chordal",
            Family::Connected => "connected",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Recover,
    Imap,
    Cliques,
    Naive,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recover" => Ok(Algorithm::Recover),
            "imap" => Ok(Algorithm::Imap),
            "cliques" => Ok(Algorithm::Cliques),
            "naive" => Ok(Algorithm::Naive),
            _ => Err(Error::arg(format!(
                "unknown algorithm `{s}` (recover|imap|cliques|naive)"
            ))),
        }
    }
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Recover => "recover",
            Algorithm::Imap => "imap",
            Algorithm::Cliques => "cliques",
            Algorithm::Naive => "naive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    /// Clique-size bound for the chordal family, clamped to `n`.
    pub width: usize,
    pub extra: usize,
    /// Edge probability for the connected family.
    pub p: f64,
    /// Adds a wall-clock column. Off by default because it makes the CSV
    /// differ between otherwise identical runs.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            family: Family::Chordal,
            sizes: vec![10, 15, 20],
            seeds: (1..=20).collect(),
            algorithms: vec![Algorithm::Recover, Algorithm::Naive],
            width: 4,
            extra: 0,
            p: 0.3,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub queries_total: u64,
    pub queries_by_order: BTreeMap<usize, u64>,
    pub edges_out: usize,
    pub wall_time_ms: Option<f64>,
}

pub fn instance(cfg: &BenchConfig, n: usize, seed: u64) -> Result<Graph> {
    match cfg.family {
        Family::Chordal => random_chordal(n, cfg.width.clamp(1, n.max(1)), cfg.extra, seed),
        Family::Connected => random_connected(n, cfg.p, seed),
    }
}

fn run_cell(cfg: &BenchConfig, n: usize, seed: u64, algorithm: Algorithm) -> Result<BenchRow> {
    let hidden = instance(cfg, n, seed)?;
    let oracle = SeparationOracle::new(hidden);
    let opts = LearnOptions::default();
    let started = Instant::now();
    let (total, by_order, edges_out) = match algorithm {
        Algorithm::Recover => {
            let o = recover_chordal(&oracle, &opts)?;
            (
                o.stats.queries_total,
                o.stats.queries_by_order,
                o.graph.edge_count(),
            )
        }
        Algorithm::Imap => {
            let o = learn_minimal_chordal_imap(&oracle, &opts)?;
            (
                o.stats.queries_total,
                o.stats.queries_by_order,
                o.graph.edge_count(),
            )
        }
        Algorithm::Cliques => {
            let o = learn_cliques(&oracle, &opts)?;
            (
                o.stats.queries_total,
                o.stats.queries_by_order,
                o.graph.edge_count(),
            )
        }
        Algorithm::Naive => {
            let o = naive_pc(&oracle)?;
            (o.counts.total, o.counts.by_order, o.graph.edge_count())
        }
    };
    let elapsed = started.elapsed();
    Ok(BenchRow {
        family: cfg.family,
        n,
        seed,
        algorithm,
        queries_total: total,
        queries_by_order: by_order,
        edges_out,
        wall_time_ms: cfg.timing.then_some(elapsed.as_secs_f64() * 1e3),
    })
}

/// Runs every (size, seed, algorithm) cell, in parallel. Rows come back in
/// grid order: size, then seed, then algorithm as listed.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let cells: Vec<(usize, u64, Algorithm)> = cfg
        .sizes
        .iter()
        .flat_map(|&n| {
            cfg.seeds
                .iter()
                .flat_map(move |&s| cfg.algorithms.iter().map(move |&a| (n, s, a)))
        })
        .collect();
    cells
        .into_par_iter()
        .map(|(n, s, a)| run_cell(cfg, n, s, a))
        .collect()
}

pub fn to_csv(rows: &[BenchRow], timing: bool) -> String {
    let mut s = String::from("family,n,seed,algorithm,queries_total,queries_by_order,edges_out");
    if timing {
        s.push_str(",wall_time_ms");
    }
    s.push('\n');
    for r in rows {
        let orders: Vec<String> = r
            .queries_by_order
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        let _ = write!(
            s,
            "{},{},{},{},{},{},{}",
            r.family.as_str(),
            r.n,
            r.seed,
            r.algorithm.as_str(),
            r.queries_total,
            orders.join(";"),
            r.edges_out
        );
        if timing {
            let _ = write!(s, ",{:.3}", r.wall_time_ms.unwrap_or(0.0));
        }
        s.push('\n');
    }
    s
}
