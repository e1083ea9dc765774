//! Clique-splitting learner.
//!
//! After the order-0/1 phase the maximal cliques of the intermediate graph
//! form the active list. Round `n` finalizes every active clique of size at
//! most `n + 1`; any larger clique is searched for a non-permanent edge
//! `x-y` and a separator `N ⊆ C\{x,y}` with `|N| = n`. The first hit splits
//! `C` (see [`divide`]) and the pieces rejoin the same round. Cliques that
//! do not split wait for round `n + 1`.
//!
//! Edges and permanence marks live in one graph shared by every clique, so
//! a removal made while splitting one clique is seen by overlapping ones;
//! an active clique that loses an edge is replaced by the maximal cliques
//! of what remains of it.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{
    is_chordal, maximal_cliques_chordal, maximal_cliques_general, Clique, Graph, NodeId,
};
use crate::learn::{
    k_subsets, FixRule, Guarantees, LearnOptions, LearnState, LearnStats, TraceEvent,
};
use crate::oracle::{IndependenceQuery, Oracle};

#[derive(Clone, Debug)]
pub struct CliqueOutcome {
    /// Maximal cliques of the learned graph, sorted.
    pub cliques: Vec<Clique>,
    pub graph: Graph,
    pub stats: LearnStats,
    pub trace: Option<Vec<TraceEvent>>,
    pub guarantees: Guarantees,
}

/// Active cliques still open to splitting, and finalized ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliqueWorklist {
    pub active: Vec<Clique>,
    pub output: Vec<Clique>,
}

pub fn learn_cliques(oracle: &dyn Oracle, opts: &LearnOptions) -> Result<CliqueOutcome> {
    let mut st = LearnState::new(oracle, opts);
    st.low_order_phase()?;
    let universe = st.n();
    let mut active = maximal_cliques_general(&st.graph);
    let mut output: Vec<Clique> = Vec::new();
    let mut n = 2;
    while !active.is_empty() {
        if n > universe + 1 {
            return Err(Error::Internal(format!(
                "round {n} exceeds universe size {universe} with {} active cliques",
                active.len()
            )));
        }
        st.stats.rounds = n;
        let mut queue: VecDeque<Clique> = active.drain(..).collect();
        let mut waiting: Vec<Clique> = Vec::new();
        while let Some(c) = queue.pop_front() {
            if !st.graph.is_complete_set(c.nodes()) {
                // lost an edge to a split elsewhere after being queued
                queue.extend(induced_cliques(&st.graph, c.nodes()));
                continue;
            }
            if c.len() <= n + 1 || all_permanent_within(&st.graph, c.nodes()) {
                st.fix_all_within(c.nodes(), FixRule::Finalize)?;
                output.push(c);
                continue;
            }
            match find_separator(&mut st, &c, n)? {
                Some((x, y, sep)) => {
                    divide_in(&mut st, x, y, &c, &sep)?;
                    queue.extend(induced_cliques(&st.graph, c.nodes()));
                    waiting = refresh(&st.graph, waiting);
                }
                None => waiting.push(c),
            }
        }
        active = prune_nested(waiting);
        n += 1;
    }

    let graph = cliques_to_graph(&output, universe);
    if graph != st.graph {
        return Err(Error::Internal(
            "finalized cliques do not cover the working graph".into(),
        ));
    }
    let cliques = if is_chordal(&graph) {
        maximal_cliques_chordal(&graph)?
    } else {
        crate::graph::maximal_cliques_general(&graph)
    };
    let out = st.finish(opts)?;
    Ok(CliqueOutcome {
        cliques,
        graph: out.graph,
        stats: out.stats,
        trace: out.trace,
        guarantees: out.guarantees,
    })
}

fn all_permanent_within(g: &Graph, nodes: &[NodeId]) -> bool {
    nodes
        .iter()
        .enumerate()
        .all(|(i, &u)| nodes[i + 1..].iter().all(|&v| g.is_permanent(u, v)))
}

/// Maximal cliques of the subgraph induced on `nodes`.
fn induced_cliques(g: &Graph, nodes: &[NodeId]) -> Vec<Clique> {
    let mut sub = Graph::new(nodes.len());
    for (i, &u) in nodes.iter().enumerate() {
        for (j, &v) in nodes.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                sub.add_edge(i, j).expect("indices in range");
            }
        }
    }
    maximal_cliques_general(&sub)
        .into_iter()
        .map(|c| Clique::new(c.nodes().iter().map(|&i| nodes[i])))
        .collect()
}

fn refresh(g: &Graph, cliques: Vec<Clique>) -> Vec<Clique> {
    cliques
        .into_iter()
        .flat_map(|c| {
            if g.is_complete_set(c.nodes()) {
                vec![c]
            } else {
                induced_cliques(g, c.nodes())
            }
        })
        .collect()
}

fn prune_nested(cliques: Vec<Clique>) -> Vec<Clique> {
    let mut out: Vec<Clique> = Vec::new();
    for (i, c) in cliques.iter().enumerate() {
        let nested = cliques
            .iter()
            .enumerate()
            .any(|(j, d)| i != j && c.is_subset_of(d) && (c != d || j < i));
        if !nested {
            out.push(c.clone());
        }
    }
    out
}

/// First non-permanent edge of `c` with an `n`-separator inside `c`.
fn find_separator(
    st: &mut LearnState<'_>,
    c: &Clique,
    n: usize,
) -> Result<Option<(NodeId, NodeId, Vec<NodeId>)>> {
    let nodes = c.nodes();
    for (i, &x) in nodes.iter().enumerate() {
        for &y in &nodes[i + 1..] {
            if st.graph.is_permanent(x, y) {
                continue;
            }
            let rest: Vec<NodeId> = nodes
                .iter()
                .copied()
                .filter(|&v| v != x && v != y)
                .collect();
            for sep in k_subsets(&rest, n) {
                if st.test(x, y, &sep)? {
                    return Ok(Some((x, y, sep)));
                }
            }
        }
    }
    Ok(None)
}

/// `{x}` plus every member of `c` joined to `x` by a permanent edge.
pub fn initialize(g: &Graph, x: NodeId, c: &Clique) -> Clique {
    Clique::new(
        std::iter::once(x).chain(c.nodes().iter().copied().filter(|&t| g.is_permanent(x, t))),
    )
}

/// Splits `c` around the separator `sep` of `x` and `y`, given that
/// `I(x, y | sep)` has already been confirmed. Returns the sub-cliques
/// `S ∪ sep`; the working graph loses every non-permanent edge between
/// different sub-cliques.
fn divide_in(
    st: &mut LearnState<'_>,
    x: NodeId,
    y: NodeId,
    c: &Clique,
    sep: &[NodeId],
) -> Result<Vec<Clique>> {
    st.fix_all_within(sep, FixRule::Separator)?;
    let outside = |s: Clique| -> Vec<NodeId> {
        s.nodes()
            .iter()
            .copied()
            .filter(|v| !sep.contains(v))
            .collect()
    };
    let mut parts: Vec<Vec<NodeId>> = vec![
        outside(initialize(&st.graph, x, c)),
        outside(initialize(&st.graph, y, c)),
    ];
    let mut visited: Vec<NodeId> = parts.concat();
    for &z in c.nodes() {
        if sep.contains(&z) || visited.contains(&z) {
            continue;
        }
        let seed = outside(initialize(&st.graph, z, c));
        // a permanent edge into an existing part settles membership without a test
        let mut home = parts
            .iter()
            .position(|p| seed.iter().any(|v| p.contains(v)));
        if home.is_none() {
            for (i, p) in parts.iter().enumerate() {
                let w = *p.iter().min().expect("parts are non-empty");
                if !st.test(w, z, sep)? {
                    home = Some(i);
                    break;
                }
            }
        }
        for &v in &seed {
            if !visited.contains(&v) {
                visited.push(v);
            }
        }
        match home {
            Some(i) => {
                for v in seed {
                    if !parts[i].contains(&v) {
                        parts[i].push(v);
                    }
                }
            }
            None => parts.push(seed),
        }
    }

    let free: Vec<NodeId> = c
        .nodes()
        .iter()
        .copied()
        .filter(|v| !sep.contains(v))
        .collect();
    for (i, &u) in free.iter().enumerate() {
        for &v in &free[i + 1..] {
            let together = parts.iter().any(|p| p.contains(&u) && p.contains(&v));
            if !together && st.graph.has_edge(u, v) && !st.graph.is_permanent(u, v) {
                let tested = (u, v) == (x.min(y), x.max(y));
                st.remove(u, v, sep, !tested)?;
            }
        }
    }
    Ok(parts
        .into_iter()
        .map(|p| Clique::new(p.into_iter().chain(sep.iter().copied())))
        .collect())
}

/// Standalone split of `c` in `graph`, for inspection and testing. Checks
/// its preconditions (including `I(x, y | sep)` through `oracle`) and moves
/// `c` in `worklist.active` to the maximal cliques of what remains of it.
pub fn divide(
    graph: &mut Graph,
    oracle: &dyn Oracle,
    x: NodeId,
    y: NodeId,
    c: &Clique,
    sep: &[NodeId],
    worklist: &mut CliqueWorklist,
) -> Result<Vec<Clique>> {
    let inside = |v: &NodeId| c.contains(*v);
    if !c.contains(x)
        || !c.contains(y)
        || sep.contains(&x)
        || sep.contains(&y)
        || !sep.iter().all(inside)
    {
        return Err(Error::Internal(format!(
            "divide preconditions: x={x}, y={y} must lie in the clique outside the separator {sep:?}"
        )));
    }
    let q = IndependenceQuery::pair(x, y, sep).map_err(|e| Error::Internal(e.to_string()))?;
    if !oracle.check(&q)? {
        return Err(Error::Internal(format!("divide called but {q} is false")));
    }
    let mut st = LearnState::with_graph(oracle, graph.clone());
    let subs = divide_in(&mut st, x, y, c, sep)?;
    *graph = st.graph;
    worklist.active.retain(|d| d != c);
    worklist.active.extend(induced_cliques(graph, c.nodes()));
    Ok(subs)
}

/// Union of the pairwise edges of every clique.
pub fn cliques_to_graph(cliques: &[Clique], n: usize) -> Graph {
    let mut g = Graph::new(n);
    for c in cliques {
        let nodes = c.nodes();
        for (i, &u) in nodes.iter().enumerate() {
            for &v in &nodes[i + 1..] {
                g.add_edge(u, v).expect("clique members inside universe");
            }
        }
    }
    g
}
