//! Exact recovery of the chordal graph of a decomposable model.
//!
//! Starts from the complete graph, removes edges with order-0 and order-1
//! tests, then runs rounds `n = 2, 3, ...`. In each round every
//! non-permanent edge `x-y` takes the smaller of `Adj(x)\{y}` and
//! `Adj(y)\{x}` (ties to `x`) as its candidate pool `S`, and:
//!
//! * is fixed if `|S| < n`;
//! * is fixed if `S` has no complete subset of size `n`;
//! * otherwise is tested against complete `n`-subsets of `S` in
//!   lexicographic order. The first independence removes `x-y` and fixes
//!   every edge inside the separator.
//!
//! The loop ends once every remaining edge is permanent.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::learn::{k_subsets, FixRule, LearnOptions, LearnOutcome, LearnState};
use crate::oracle::Oracle;

pub fn recover_chordal(oracle: &dyn Oracle, opts: &LearnOptions) -> Result<LearnOutcome> {
    learn_by_rounds(oracle, opts, false)
}

/// Shared driver: with `sweep` set, every separator that removes an edge is
/// immediately retried on all other non-permanent edges outside it.
pub(crate) fn learn_by_rounds(
    oracle: &dyn Oracle,
    opts: &LearnOptions,
    sweep: bool,
) -> Result<LearnOutcome> {
    let mut st = LearnState::new(oracle, opts);
    st.low_order_phase()?;
    let universe = st.n();
    let mut n = 2;
    while !st.graph.all_permanent() {
        if n > universe {
            return Err(Error::Internal(format!(
                "round {n} exceeds universe size {universe} with non-permanent edges left"
            )));
        }
        st.stats.rounds = n;
        for (x, y) in st.graph.edges() {
            if !st.graph.has_edge(x, y) || st.graph.is_permanent(x, y) {
                continue;
            }
            process_edge(&mut st, x, y, n, sweep)?;
        }
        n += 1;
    }
    st.finish(opts)
}

/// `Adj(x)\{y}` or `Adj(y)\{x}`, whichever is smaller; ties go to `x`.
pub(crate) fn candidate_pool(g: &Graph, x: NodeId, y: NodeId) -> Vec<NodeId> {
    let sx: Vec<NodeId> = g.neighbors(x).filter(|&v| v != y).collect();
    let sy: Vec<NodeId> = g.neighbors(y).filter(|&v| v != x).collect();
    if sx.len() <= sy.len() {
        sx
    } else {
        sy
    }
}

fn process_edge(
    st: &mut LearnState<'_>,
    x: NodeId,
    y: NodeId,
    n: usize,
    sweep: bool,
) -> Result<()> {
    let pool = candidate_pool(&st.graph, x, y);
    if pool.len() < n {
        return st.fix(x, y, FixRule::Exhausted);
    }
    let complete: Vec<Vec<NodeId>> = k_subsets(&pool, n)
        .filter(|s| st.graph.is_complete_set(s))
        .collect();
    if complete.is_empty() {
        return st.fix(x, y, FixRule::NoCompleteSubset);
    }
    for sep in complete {
        if st.test(x, y, &sep)? {
            st.remove(x, y, &sep, false)?;
            if sweep {
                sweep_with_separator(st, &sep)?;
            }
            st.fix_all_within(&sep, FixRule::Separator)?;
            break;
        }
    }
    Ok(())
}

/// Retries `sep` on every adjacent non-permanent pair with both endpoints
/// outside it, over a snapshot taken now.
fn sweep_with_separator(st: &mut LearnState<'_>, sep: &[NodeId]) -> Result<()> {
    let pairs: Vec<(NodeId, NodeId)> = st
        .graph
        .edges()
        .into_iter()
        .filter(|&(u, v)| !sep.contains(&u) && !sep.contains(&v) && !st.graph.is_permanent(u, v))
        .collect();
    for (u, v) in pairs {
        if !st.graph.has_edge(u, v) || st.graph.is_permanent(u, v) {
            continue;
        }
        if st.test(u, v, sep)? {
            st.remove(u, v, sep, false)?;
        }
    }
    Ok(())
}

/// True iff the two graphs have identical edge sets.
pub fn verify_recovery(hidden: &Graph, learned: &Graph) -> Result<bool> {
    if hidden.node_count() != learned.node_count() {
        return Err(Error::arg(format!(
            "universe mismatch: hidden has {} nodes, learned has {}",
            hidden.node_count(),
            learned.node_count()
        )));
    }
    Ok(hidden == learned)
}
