//! Naive PC-style skeleton search, the comparison point for `bench`.
//!
//! Order `k = 0, 1, 2, ...`: for every surviving edge `x-y`, test every
//! `k`-subset of `Adj(x)\{y}`, then every `k`-subset of `Adj(y)\{x}` not
//! already tried, removing the edge on the first independence. No
//! permanence marks and no completeness pruning. Stops when no edge has a
//! neighborhood of size `k`.

use std::collections::HashSet;

use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::learn::k_subsets;
use crate::oracle::{CountingOracle, IndependenceQuery, Oracle, QueryCounts};

#[derive(Clone, Debug)]
pub struct BaselineOutcome {
    pub graph: Graph,
    pub counts: QueryCounts,
}

pub fn naive_pc(oracle: &dyn Oracle) -> Result<BaselineOutcome> {
    let n = oracle.universe();
    let counting = CountingOracle::new(oracle);
    let mut g = Graph::complete(n);
    let mut k = 0;
    loop {
        let mut any_testable = false;
        for (x, y) in g.edges() {
            if !g.has_edge(x, y) {
                continue;
            }
            let sx: Vec<NodeId> = g.neighbors(x).filter(|&v| v != y).collect();
            let sy: Vec<NodeId> = g.neighbors(y).filter(|&v| v != x).collect();
            if sx.len() < k && sy.len() < k {
                continue;
            }
            any_testable = true;
            let mut tried: HashSet<Vec<NodeId>> = HashSet::new();
            'search: for pool in [&sx, &sy] {
                for sep in k_subsets(pool, k) {
                    if !tried.insert(sep.clone()) {
                        continue;
                    }
                    let q = IndependenceQuery::pair(x, y, &sep)?;
                    if counting.independent(&q) {
                        g.remove_edge(x, y);
                        break 'search;
                    }
                }
            }
        }
        if !any_testable {
            break;
        }
        k += 1;
    }
    Ok(BaselineOutcome {
        graph: g,
        counts: counting.counts(),
    })
}
