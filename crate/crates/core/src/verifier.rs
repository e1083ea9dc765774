//! Brute-force checks that do not share code paths with the learners:
//! chordality by chordless-cycle search, enumeration of every minimal
//! chordal I-map of a small graph, and transcript replay.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{separates, Graph, NodeId};
use crate::learn::TraceEvent;

pub const CHORDAL_BRUTEFORCE_CAP: usize = 10;
pub const MINIMAL_IMAP_CAP: usize = 7;

/// True iff `g` has no chordless cycle of length four or more.
pub fn chordal_bruteforce(g: &Graph) -> Result<bool> {
    let n = g.node_count();
    if n > CHORDAL_BRUTEFORCE_CAP {
        return Err(Error::CapExceeded {
            what: "brute-force chordality",
            n,
            cap: CHORDAL_BRUTEFORCE_CAP,
        });
    }
    Ok(find_chordless_cycle(g).is_none())
}

/// Some chordless cycle of length >= 4, listed from its smallest node.
pub fn find_chordless_cycle(g: &Graph) -> Option<Vec<NodeId>> {
    let n = g.node_count();
    for start in 0..n {
        for first in g.neighbors(start).filter(|&v| v > start) {
            let mut path = vec![start, first];
            if let Some(c) = extend_induced_path(g, &mut path) {
                return Some(c);
            }
        }
    }
    None
}

// `path` is an induced path whose only neighbor of path[0] is path[1].
fn extend_induced_path(g: &Graph, path: &mut Vec<NodeId>) -> Option<Vec<NodeId>> {
    let start = path[0];
    let last = *path.last().expect("path is non-empty");
    for w in g.neighbors(last) {
        if w <= start || path.contains(&w) {
            continue;
        }
        // w may touch only `last` among the interior of the path
        if path[1..path.len() - 1].iter().any(|&p| g.has_edge(p, w)) {
            continue;
        }
        if g.has_edge(start, w) {
            if path.len() >= 3 {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            continue;
        }
        path.push(w);
        if let Some(c) = extend_induced_path(g, path) {
            return Some(c);
        }
        path.pop();
    }
    None
}

/// Every chordal `G ⊇ hidden` on the same nodes such that no chordal graph
/// strictly between `hidden` and `G` exists. Fill sets are enumerated by
/// increasing size; supersets of an accepted fill set are skipped, so each
/// accepted chordal candidate is minimal. Sorted by edge list.
pub fn all_minimal_chordal_imaps(hidden: &Graph) -> Result<Vec<Graph>> {
    let n = hidden.node_count();
    if n > MINIMAL_IMAP_CAP {
        return Err(Error::CapExceeded {
            what: "minimal chordal I-map enumeration",
            n,
            cap: MINIMAL_IMAP_CAP,
        });
    }
    let non_edges: Vec<(NodeId, NodeId)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !hidden.has_edge(u, v))
        .collect();
    let m = non_edges.len();
    let mut masks: Vec<u32> = (0..(1u32 << m)).collect();
    masks.sort_by_key(|mask| (mask.count_ones(), *mask));
    let mut accepted: Vec<u32> = Vec::new();
    let mut out = Vec::new();
    for mask in masks {
        if accepted.iter().any(|&a| a & !mask == 0) {
            continue;
        }
        let mut g = hidden.unmarked();
        for (i, &(u, v)) in non_edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v)?;
            }
        }
        if find_chordless_cycle(&g).is_none() {
            accepted.push(mask);
            out.push(g);
        }
    }
    out.sort_by_key(|g| g.edges());
    Ok(out)
}

/// First disagreement found while replaying a learner trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayMismatch {
    /// Index of the offending event in the trace.
    pub index: usize,
    pub detail: String,
}

impl fmt::Display for ReplayMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "event #{}: {}", self.index, self.detail)
    }
}

impl std::error::Error for ReplayMismatch {}

/// What a successful replay established.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplaySummary {
    pub queries: usize,
    pub removals: usize,
    /// Queries with a conditioning set of two or more nodes.
    pub high_order_queries: usize,
}

/// Re-evaluates a trace against separation in `hidden`.
///
/// Checks that every logged answer matches separation in `hidden`, that
/// every removal deletes an edge currently present and cites a separator
/// that really separates its endpoints in `hidden` (so no hidden edge is
/// ever lost), and that every tested removal is backed by an earlier logged
/// query on the same statement answered `true`.
pub fn replay_transcript(
    trace: &[TraceEvent],
    hidden: &Graph,
) -> Result<ReplaySummary, ReplayMismatch> {
    replay(trace, hidden, false)
}

/// [`replay_transcript`] plus the query discipline check: every
/// conditioning set of size two or more must be complete in the learner's
/// graph as reconstructed from the removals logged before the query.
pub fn replay_with_discipline(
    trace: &[TraceEvent],
    hidden: &Graph,
) -> Result<ReplaySummary, ReplayMismatch> {
    replay(trace, hidden, true)
}

fn replay(
    trace: &[TraceEvent],
    hidden: &Graph,
    discipline: bool,
) -> Result<ReplaySummary, ReplayMismatch> {
    let n = hidden.node_count();
    let mut current = Graph::complete(n);
    let mut proven: HashSet<(NodeId, NodeId, Vec<NodeId>)> = HashSet::new();
    let mut summary = ReplaySummary::default();
    for (index, ev) in trace.iter().enumerate() {
        let fail = |detail: String| ReplayMismatch { index, detail };
        match ev {
            TraceEvent::Query { query, independent } => {
                summary.queries += 1;
                let truth = hidden
                    .separates_sets(query.x(), query.y(), query.z())
                    .map_err(|e| fail(format!("{query}: {e}")))?;
                if truth != *independent {
                    return Err(fail(format!(
                        "{query} logged as {independent}, separation in hidden graph says {truth}"
                    )));
                }
                if query.order() >= 2 {
                    summary.high_order_queries += 1;
                    if discipline && !current.is_complete_set(query.z()) {
                        return Err(fail(format!(
                            "{query} conditions on a set that is not complete in the current graph"
                        )));
                    }
                }
                if let (true, [x], [y]) = (*independent, query.x(), query.y()) {
                    proven.insert((*x, *y, query.z().to_vec()));
                }
            }
            TraceEvent::Remove {
                x,
                y,
                separator,
                implied,
            } => {
                summary.removals += 1;
                if !current.has_edge(*x, *y) {
                    return Err(fail(format!("removal of absent edge {x}-{y}")));
                }
                if hidden.has_edge(*x, *y) {
                    return Err(fail(format!("removal of hidden edge {x}-{y}")));
                }
                let truly =
                    separates(hidden, *x, *y, separator).map_err(|e| fail(e.to_string()))?;
                if !truly {
                    return Err(fail(format!(
                        "removal of {x}-{y} cites {separator:?}, which does not separate them"
                    )));
                }
                if !implied {
                    let mut sep = separator.clone();
                    sep.sort_unstable();
                    let cited = (*x.min(y), *x.max(y), sep);
                    if !proven.contains(&cited) {
                        return Err(fail(format!(
                            "removal of {x}-{y} is not backed by an earlier true test on {separator:?}"
                        )));
                    }
                }
                current.remove_edge(*x, *y);
            }
            TraceEvent::Fix { x, y, .. } => {
                if !current.has_edge(*x, *y) {
                    return Err(fail(format!("fix of absent edge {x}-{y}")));
                }
            }
        }
    }
    Ok(summary)
}
