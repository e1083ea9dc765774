//! State, statistics and trace events shared by the learners.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::oracle::{CountingOracle, IndependenceQuery, Oracle};

/// Why an edge was marked permanent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixRule {
    /// Fewer than `n` candidate conditioning nodes remain.
    Exhausted,
    /// No complete candidate separator of size `n` exists.
    NoCompleteSubset,
    /// The edge lies inside a separator that just removed another edge.
    Separator,
    /// The clique learner finalized a clique containing the edge.
    Finalize,
}

impl FixRule {
    fn as_str(self) -> &'static str {
        match self {
            FixRule::Exhausted => "exhausted",
            FixRule::NoCompleteSubset => "no-complete-subset",
            FixRule::Separator => "separator",
            FixRule::Finalize => "finalize",
        }
    }
}

/// One step of a learner run, in execution order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum TraceEvent {
    Query {
        query: IndependenceQuery,
        independent: bool,
    },
    /// Edge deleted. `implied` removals were not tested directly: the clique
    /// learner deduces them from the separator of a split.
    Remove {
        x: NodeId,
        y: NodeId,
        separator: Vec<NodeId>,
        implied: bool,
    },
    Fix {
        x: NodeId,
        y: NodeId,
        rule: FixRule,
    },
}

fn set_str(s: &[NodeId]) -> String {
    let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

fn parse_set(s: &str) -> Option<Vec<NodeId>> {
    let body = s.trim().strip_prefix('{')?.strip_suffix('}')?;
    body.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect()
}

fn parse_pair(s: &str) -> Option<(NodeId, NodeId)> {
    let (a, b) = s.split_once('-')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Query { query, independent } => write!(f, "{query} -> {independent}"),
            TraceEvent::Remove {
                x,
                y,
                separator,
                implied,
            } => {
                let verb = if *implied { "remove-implied" } else { "remove" };
                write!(f, "{verb} {x}-{y} by {}", set_str(separator))
            }
            TraceEvent::Fix { x, y, rule } => write!(f, "fix {x}-{y} {}", rule.as_str()),
        }
    }
}

impl FromStr for TraceEvent {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::arg(format!("malformed transcript line `{line}`"));
        let line = line.trim();
        if let Some((q, a)) = line.split_once("->") {
            let independent = match a.trim() {
                "true" => true,
                "false" => false,
                _ => return Err(bad()),
            };
            return Ok(TraceEvent::Query {
                query: q.trim().parse()?,
                independent,
            });
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [verb @ ("remove" | "remove-implied"), pair, "by", sep] => {
                let (x, y) = parse_pair(pair).ok_or_else(bad)?;
                Ok(TraceEvent::Remove {
                    x,
                    y,
                    separator: parse_set(sep).ok_or_else(bad)?,
                    implied: *verb == "remove-implied",
                })
            }
            ["fix", pair, rule] => {
                let (x, y) = parse_pair(pair).ok_or_else(bad)?;
                let rule = [
                    FixRule::Exhausted,
                    FixRule::NoCompleteSubset,
                    FixRule::Separator,
                    FixRule::Finalize,
                ]
                .into_iter()
                .find(|r| r.as_str() == *rule)
                .ok_or_else(bad)?;
                Ok(TraceEvent::Fix { x, y, rule })
            }
            _ => Err(bad()),
        }
    }
}

/// Renders a trace one event per line.
pub fn trace_to_text(trace: &[TraceEvent]) -> String {
    trace.iter().map(|e| format!("{e}\n")).collect()
}

/// Parses the output of [`trace_to_text`]; blank lines and `#` comments skipped.
pub fn trace_from_text(src: &str) -> Result<Vec<TraceEvent>> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

/// Per-run accounting.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnStats {
    pub queries_total: u64,
    pub queries_by_order: BTreeMap<usize, u64>,
    pub edges_removed: usize,
    pub fixed_exhausted: usize,
    pub fixed_no_complete_subset: usize,
    pub fixed_by_separator: usize,
    pub fixed_on_finalize: usize,
    /// Last conditioning-set size reached by the round loop.
    pub rounds: usize,
}

impl LearnStats {
    pub fn edges_fixed(&self) -> usize {
        self.fixed_exhausted
            + self.fixed_no_complete_subset
            + self.fixed_by_separator
            + self.fixed_on_finalize
    }
}

/// Whether the caller vouches that the oracle is decomposable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelClass {
    #[default]
    Decomposable,
    GraphIsomorphic,
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LearnOptions {
    /// Record every query, removal and fix.
    pub trace: bool,
    pub model_class: ModelClass,
}

impl LearnOptions {
    pub fn traced() -> Self {
        LearnOptions {
            trace: true,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Guarantees {
    Applicable,
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct LearnOutcome {
    pub graph: Graph,
    pub stats: LearnStats,
    pub trace: Option<Vec<TraceEvent>>,
    pub guarantees: Guarantees,
}

/// Mutable state of one learner run: the working graph, instrumented oracle,
/// counters and optional trace.
pub(crate) struct LearnState<'a> {
    pub graph: Graph,
    pub stats: LearnStats,
    oracle: CountingOracle<&'a dyn Oracle>,
    trace: Option<Vec<TraceEvent>>,
}

impl<'a> LearnState<'a> {
    pub fn new(oracle: &'a dyn Oracle, opts: &LearnOptions) -> Self {
        let n = oracle.universe();
        LearnState {
            graph: Graph::complete(n),
            stats: LearnStats::default(),
            oracle: CountingOracle::new(oracle),
            trace: opts.trace.then(Vec::new),
        }
    }

    /// State over an existing working graph, permanence marks included.
    pub fn with_graph(oracle: &'a dyn Oracle, graph: Graph) -> Self {
        LearnState {
            graph,
            stats: LearnStats::default(),
            oracle: CountingOracle::new(oracle),
            trace: None,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.node_count()
    }

    /// Asks `I(x, y | z)`.
    pub fn test(&mut self, x: NodeId, y: NodeId, z: &[NodeId]) -> Result<bool> {
        let q = IndependenceQuery::pair(x, y, z)
            .map_err(|e| Error::Internal(format!("learner built a malformed query: {e}")))?;
        let independent = self.oracle.independent(&q);
        if let Some(t) = &mut self.trace {
            t.push(TraceEvent::Query {
                query: q,
                independent,
            });
        }
        Ok(independent)
    }

    pub fn remove(
        &mut self,
        x: NodeId,
        y: NodeId,
        separator: &[NodeId],
        implied: bool,
    ) -> Result<()> {
        if self.graph.is_permanent(x, y) {
            return Err(Error::Internal(format!(
                "attempt to remove permanent edge {x}-{y}"
            )));
        }
        if !self.graph.remove_edge(x, y) {
            return Err(Error::Internal(format!(
                "attempt to remove absent edge {x}-{y}"
            )));
        }
        self.stats.edges_removed += 1;
        if let Some(t) = &mut self.trace {
            t.push(TraceEvent::Remove {
                x: x.min(y),
                y: x.max(y),
                separator: separator.to_vec(),
                implied,
            });
        }
        Ok(())
    }

    pub fn fix(&mut self, x: NodeId, y: NodeId, rule: FixRule) -> Result<()> {
        if !self.graph.mark_permanent(x, y)? {
            return Ok(());
        }
        match rule {
            FixRule::Exhausted => self.stats.fixed_exhausted += 1,
            FixRule::NoCompleteSubset => self.stats.fixed_no_complete_subset += 1,
            FixRule::Separator => self.stats.fixed_by_separator += 1,
            FixRule::Finalize => self.stats.fixed_on_finalize += 1,
        }
        if let Some(t) = &mut self.trace {
            t.push(TraceEvent::Fix {
                x: x.min(y),
                y: x.max(y),
                rule,
            });
        }
        Ok(())
    }

    /// Marks every edge inside `nodes` permanent.
    pub fn fix_all_within(&mut self, nodes: &[NodeId], rule: FixRule) -> Result<()> {
        for (i, &u) in nodes.iter().enumerate() {
            for &v in &nodes[i + 1..] {
                self.fix(u, v, rule)?;
            }
        }
        Ok(())
    }

    /// Order-0 pass over all pairs, then order-1 pass over the surviving
    /// pairs with every other node as a candidate conditioning singleton.
    pub fn low_order_phase(&mut self) -> Result<()> {
        let n = self.n();
        for x in 0..n {
            for y in (x + 1)..n {
                if self.test(x, y, &[])? {
                    self.remove(x, y, &[], false)?;
                }
            }
        }
        for (x, y) in self.graph.edges() {
            if !self.graph.has_edge(x, y) {
                continue;
            }
            for z in (0..n).filter(|&z| z != x && z != y) {
                if self.test(x, y, &[z])? {
                    self.remove(x, y, &[z], false)?;
                    break;
                }
            }
        }
        Ok(())
    }

    pub fn finish(self, opts: &LearnOptions) -> Result<LearnOutcome> {
        let LearnState {
            graph,
            mut stats,
            oracle,
            trace,
        } = self;
        let counts = oracle.counts();
        stats.queries_total = counts.total;
        stats.queries_by_order = counts.by_order;
        let n = graph.node_count();
        let accounted = stats.edges_removed + stats.edges_fixed();
        if accounted != n * n.saturating_sub(1) / 2 {
            return Err(Error::Internal(format!(
                "edge accounting mismatch: {accounted} events for {} pairs",
                n * n.saturating_sub(1) / 2
            )));
        }
        let guarantees = match opts.model_class {
            ModelClass::Unknown => Guarantees::NotApplicable,
            _ => Guarantees::Applicable,
        };
        Ok(LearnOutcome {
            graph,
            stats,
            trace,
            guarantees,
        })
    }
}

/// All `k`-subsets of `items` (assumed sorted) in lexicographic order.
pub(crate) fn k_subsets(items: &[NodeId], k: usize) -> KSubsets<'_> {
    KSubsets {
        items,
        idx: (k <= items.len()).then(|| (0..k).collect()),
    }
}

pub(crate) struct KSubsets<'a> {
    items: &'a [NodeId],
    idx: Option<Vec<usize>>,
}

impl Iterator for KSubsets<'_> {
    type Item = Vec<NodeId>;

    fn next(&mut self) -> Option<Vec<NodeId>> {
        let idx = self.idx.as_mut()?;
        let out = idx.iter().map(|&i| self.items[i]).collect();
        let (k, len) = (idx.len(), self.items.len());
        let mut i = k;
        loop {
            if i == 0 {
                self.idx = None;
                break;
            }
            i -= 1;
            if idx[i] < len - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_lexicographic() {
        let all: Vec<_> = k_subsets(&[1, 3, 5, 7], 2).collect();
        assert_eq!(
            all,
            vec![
                vec![1, 3],
                vec![1, 5],
                vec![1, 7],
                vec![3, 5],
                vec![3, 7],
                vec![5, 7]
            ]
        );
        assert_eq!(
            k_subsets(&[1, 2], 0).collect::<Vec<_>>(),
            vec![Vec::<NodeId>::new()]
        );
        assert_eq!(k_subsets(&[1, 2], 3).count(), 0);
        assert_eq!(k_subsets(&[0, 1, 2, 3, 4, 5], 3).count(), 20);
    }

    #[test]
    fn trace_lines_round_trip() {
        let events = vec![
            TraceEvent::Query {
                query: IndependenceQuery::pair(0, 2, &[1, 3]).unwrap(),
                independent: true,
            },
            TraceEvent::Remove {
                x: 0,
                y: 2,
                separator: vec![1, 3],
                implied: false,
            },
            TraceEvent::Remove {
                x: 4,
                y: 5,
                separator: vec![],
                implied: true,
            },
            TraceEvent::Fix {
                x: 1,
                y: 3,
                rule: FixRule::Separator,
            },
        ];
        let text = trace_to_text(&events);
        assert_eq!(
            text,
            "I({0}|{2}|{1,3}) -> true\nremove 0-2 by {1,3}\nremove-implied 4-5 by {}\nfix 1-3 separator\n"
        );
        assert_eq!(trace_from_text(&text).unwrap(), events);
        assert!(trace_from_text("fix 1-3 bogus\n").is_err());
    }
}
