use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{chordal::perfect_elimination_ordering, Graph, NodeId};
use crate::error::{Error, Result};

/// A complete node set, stored sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clique(Vec<NodeId>);

impl Clique {
    pub fn new(nodes: impl IntoIterator<Item = NodeId>) -> Self {
        let set: BTreeSet<NodeId> = nodes.into_iter().collect();
        Clique(set.into_iter().collect())
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Clique) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn intersection(&self, other: &Clique) -> Vec<NodeId> {
        self.0
            .iter()
            .copied()
            .filter(|&v| other.contains(v))
            .collect()
    }
}

impl From<Vec<NodeId>> for Clique {
    fn from(v: Vec<NodeId>) -> Self {
        Clique::new(v)
    }
}

/// Drops sets contained in another member and returns the rest sorted.
pub(crate) fn keep_maximal(mut cands: Vec<Clique>) -> Vec<Clique> {
    cands.sort();
    cands.dedup();
    // Larger sets first so each candidate only needs checking against kept ones.
    cands.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Clique> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| c.is_subset_of(k)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

/// Maximal cliques of a chordal graph, read off the perfect elimination
/// ordering. At most `n` cliques; sorted.
pub fn maximal_cliques_chordal(g: &Graph) -> Result<Vec<Clique>> {
    let peo = perfect_elimination_ordering(g)
        .ok_or_else(|| Error::Precondition("graph is not chordal".into()))?;
    let mut pos = vec![0usize; g.node_count()];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let cands = peo
        .iter()
        .map(|&v| {
            Clique::new(std::iter::once(v).chain(g.neighbors(v).filter(|&u| pos[u] > pos[v])))
        })
        .collect();
    Ok(keep_maximal(cands))
}

/// All maximal cliques of an arbitrary graph (Bron–Kerbosch with Tomita
/// pivoting). Exponential in the worst case; sorted output.
pub fn maximal_cliques_general(g: &Graph) -> Vec<Clique> {
    let mut out = Vec::new();
    let p: Vec<NodeId> = (0..g.node_count()).collect();
    bron_kerbosch(g, &mut Vec::new(), p, Vec::new(), &mut out);
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<NodeId>,
    mut p: Vec<NodeId>,
    mut x: Vec<NodeId>,
    out: &mut Vec<Clique>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(Clique::new(r.iter().copied()));
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| {
            (
                p.iter().filter(|&&v| g.has_edge(u, v)).count(),
                std::cmp::Reverse(u),
            )
        })
        .expect("p is non-empty");
    let branch: Vec<NodeId> = p
        .iter()
        .copied()
        .filter(|&v| !g.has_edge(pivot, v))
        .collect();
    for v in branch {
        r.push(v);
        let p2 = p.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
        let x2 = x.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
        bron_kerbosch(g, r, p2, x2, out);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::cycle4;

    fn c(v: &[NodeId]) -> Clique {
        Clique::new(v.iter().copied())
    }

    #[test]
    fn chordal_cliques_examples() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(
            maximal_cliques_chordal(&g).unwrap(),
            vec![c(&[0, 1, 2]), c(&[2, 3])]
        );
        assert_eq!(
            maximal_cliques_chordal(&Graph::complete(4)).unwrap(),
            vec![c(&[0, 1, 2, 3])]
        );
        assert_eq!(
            maximal_cliques_chordal(&Graph::new(3)).unwrap(),
            vec![c(&[0]), c(&[1]), c(&[2])]
        );
        assert!(matches!(
            maximal_cliques_chordal(&cycle4()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn general_cliques_examples() {
        assert_eq!(
            maximal_cliques_general(&cycle4()),
            vec![c(&[0, 1]), c(&[0, 3]), c(&[1, 2]), c(&[2, 3])]
        );
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(maximal_cliques_general(&g), vec![c(&[0, 1, 2]), c(&[2, 3])]);
        assert_eq!(
            maximal_cliques_general(&Graph::complete(6)),
            vec![c(&[0, 1, 2, 3, 4, 5])]
        );
        assert_eq!(
            maximal_cliques_general(&Graph::new(2)),
            vec![c(&[0]), c(&[1])]
        );
    }

    #[test]
    fn keep_maximal_drops_nested() {
        let kept = keep_maximal(vec![c(&[1, 2]), c(&[0, 1, 2]), c(&[3]), c(&[1, 2])]);
        assert_eq!(kept, vec![c(&[0, 1, 2]), c(&[3])]);
    }
}
