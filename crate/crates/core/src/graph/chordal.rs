use super::{Graph, NodeId};

/// Maximum cardinality search. Returns nodes in visit order; ties go to the
/// lowest id. The reverse of the visit order is a perfect elimination
/// ordering whenever the graph is chordal.
fn maximum_cardinality_search(g: &Graph) -> Vec<NodeId> {
    let n = g.node_count();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<NodeId> = None;
        for v in 0..n {
            if !visited[v] && best.is_none_or(|b| weight[v] > weight[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("unvisited node remains");
        visited[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// Perfect elimination ordering of `g` if it is chordal: each node's
/// neighbors that come later in the returned order form a clique.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<NodeId>> {
    let n = g.node_count();
    let mut peo = maximum_cardinality_search(g);
    peo.reverse();
    let mut pos = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    // Fill-in check: later neighbors of v, minus the earliest one (its
    // parent), must all be adjacent to the parent.
    for &v in &peo {
        let later: Vec<NodeId> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        if later.iter().any(|&u| u != parent && !g.has_edge(u, parent)) {
            return None;
        }
    }
    Some(peo)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}
