use serde::{Deserialize, Serialize};

use super::{Clique, NodeId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub separator: Vec<NodeId>,
}

/// Tree (forest, for disconnected graphs) over the cliques of a chordal
/// graph with the running intersection property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinTree {
    pub cliques: Vec<Clique>,
    pub edges: Vec<TreeEdge>,
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Maximum-weight spanning forest of the clique intersection graph, weight
/// `|Ci ∩ Cj|`; ties broken by lowest clique index pair. The result is
/// checked for running intersection before it is returned.
pub fn build_join_tree(cliques: &[Clique]) -> Result<JoinTree> {
    let mut cands: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..cliques.len() {
        for j in (i + 1)..cliques.len() {
            let w = cliques[i].intersection(&cliques[j]).len();
            if w > 0 {
                cands.push((w, i, j));
            }
        }
    }
    cands.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut dsu = DisjointSets((0..cliques.len()).collect());
    let mut edges = Vec::new();
    for (_, i, j) in cands {
        if dsu.union(i, j) {
            edges.push(TreeEdge {
                a: i,
                b: j,
                separator: cliques[i].intersection(&cliques[j]),
            });
        }
    }
    let tree = JoinTree {
        cliques: cliques.to_vec(),
        edges,
    };
    if let Some(v) = tree.running_intersection_violation() {
        return Err(Error::Precondition(format!(
            "cliques containing node {v} do not form a subtree; input is not a chordal decomposition"
        )));
    }
    Ok(tree)
}

impl JoinTree {
    /// First node whose containing cliques are not connected in the tree.
    pub fn running_intersection_violation(&self) -> Option<NodeId> {
        let max_node = self
            .cliques
            .iter()
            .flat_map(|c| c.nodes().iter().copied())
            .max()?;
        for v in 0..=max_node {
            let holders: Vec<usize> = (0..self.cliques.len())
                .filter(|&i| self.cliques[i].contains(v))
                .collect();
            if holders.len() <= 1 {
                continue;
            }
            let mut dsu = DisjointSets((0..self.cliques.len()).collect());
            for e in &self.edges {
                if self.cliques[e.a].contains(v) && self.cliques[e.b].contains(v) {
                    dsu.union(e.a, e.b);
                }
            }
            let root = dsu.find(holders[0]);
            if holders.iter().any(|&h| dsu.find(h) != root) {
                return Some(v);
            }
        }
        None
    }

    pub fn satisfies_running_intersection(&self) -> bool {
        self.running_intersection_violation().is_none()
    }
}
