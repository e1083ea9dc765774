//! Undirected graphs over a fixed universe `0..n`, with the per-edge
//! permanence marks the learners use as their working state.

mod chordal;
mod cliques;
pub mod io;
mod join_tree;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub use chordal::{is_chordal, perfect_elimination_ordering};
pub use cliques::{maximal_cliques_chordal, maximal_cliques_general, Clique};
pub use join_tree::{build_join_tree, JoinTree, TreeEdge};

/// Index of a variable in the universe. Ids are dense in `0..n`.
pub type NodeId = usize;

/// Dense symmetric adjacency matrix with a parallel permanence matrix.
///
/// Equality compares node count and edge set only; permanence marks are
/// learner bookkeeping and do not take part in it.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    permanent: Vec<bool>,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            permanent: vec![false; n * n],
        }
    }

    /// Complete graph on `n` nodes, every edge non-permanent.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set(u, v, true);
            }
        }
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, u: NodeId, v: NodeId) -> usize {
        u * self.n + v
    }

    fn set(&mut self, u: NodeId, v: NodeId, present: bool) {
        let (a, b) = (self.idx(u, v), self.idx(v, u));
        self.adj[a] = present;
        self.adj[b] = present;
        if !present {
            self.permanent[a] = false;
            self.permanent[b] = false;
        }
    }

    fn check_pair(&self, u: NodeId, v: NodeId) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::arg(format!(
                "edge {u}-{v} outside universe of size {}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::arg(format!("self-loop at node {u}")));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.check_pair(u, v)?;
        self.set(u, v, true);
        Ok(())
    }

    /// Removes `u-v` (and its permanence mark). Returns whether it was present.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        if u >= self.n || v >= self.n || u == v || !self.has_edge(u, v) {
            return false;
        }
        self.set(u, v, false);
        true
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u != v && self.adj[self.idx(u, v)]
    }

    #[inline]
    pub fn is_permanent(&self, u: NodeId, v: NodeId) -> bool {
        u != v && self.permanent[self.idx(u, v)]
    }

    /// Marks an existing edge permanent. Returns true if the mark is new.
    pub fn mark_permanent(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        if !self.has_edge(u, v) {
            return Err(Error::Internal(format!(
                "cannot mark absent edge {u}-{v} permanent"
            )));
        }
        if self.is_permanent(u, v) {
            return Ok(false);
        }
        let (a, b) = (self.idx(u, v), self.idx(v, u));
        self.permanent[a] = true;
        self.permanent[b] = true;
        Ok(true)
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let row = &self.adj[u * self.n..(u + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(v, &e)| if e { Some(v) } else { None })
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.neighbors(u).count()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count() / 2
    }

    pub fn all_permanent(&self) -> bool {
        self.edges()
            .into_iter()
            .all(|(u, v)| self.is_permanent(u, v))
    }

    /// True iff every pair of distinct nodes in `nodes` is adjacent.
    pub fn is_complete_set(&self, nodes: &[NodeId]) -> bool {
        nodes.iter().enumerate().all(|(i, &u)| {
            nodes[i + 1..]
                .iter()
                .all(|&v| u == v || self.has_edge(u, v))
        })
    }

    /// True iff every edge of `self` is an edge of `other` (same universe).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(&a, &b)| !a || b)
    }

    /// Copy of the edge set without permanence marks.
    pub fn unmarked(&self) -> Graph {
        Graph {
            n: self.n,
            adj: self.adj.clone(),
            permanent: vec![false; self.n * self.n],
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Set-valued separation: true iff every chain from a member of `xs` to a
    /// member of `ys` passes through `zs`. Arguments must be pairwise disjoint.
    pub fn separates_sets(&self, xs: &[NodeId], ys: &[NodeId], zs: &[NodeId]) -> Result<bool> {
        let mut role = vec![0u8; self.n];
        for (tag, set) in [(1u8, xs), (2, ys), (3, zs)] {
            for &u in set {
                if u >= self.n {
                    return Err(Error::arg(format!("node {u} outside universe")));
                }
                if role[u] != 0 && role[u] != tag {
                    return Err(Error::arg(format!(
                        "node {u} appears in more than one argument"
                    )));
                }
                role[u] = tag;
            }
        }
        Ok(self.separated_by_roles(&mut role, xs))
    }

    // BFS from `xs` over nodes not blocked (role 3); hitting role 2 means connected.
    fn separated_by_roles(&self, role: &mut [u8], xs: &[NodeId]) -> bool {
        let mut queue: VecDeque<NodeId> = xs.iter().copied().collect();
        for &x in xs {
            role[x] = 4;
        }
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                match role[v] {
                    2 => return false,
                    0 | 1 => {
                        role[v] = 4;
                        queue.push_back(v);
                    }
                    _ => {}
                }
            }
        }
        true
    }
}

/// True iff every chain from `x` to `y` meets `z`.
pub fn separates(g: &Graph, x: NodeId, y: NodeId, z: &[NodeId]) -> Result<bool> {
    if x == y {
        return Err(Error::arg("separation needs two distinct nodes"));
    }
    g.separates_sets(&[x], &[y], z)
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}
