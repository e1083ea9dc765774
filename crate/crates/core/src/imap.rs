//! Minimal chordal I-maps of models isomorphic to arbitrary undirected
//! graphs.
//!
//! Same rounds as [`crate::recovery`], except that whenever a separator `N`
//! removes an edge it is immediately tried on every other non-permanent
//! edge with both endpoints outside `N`, before `N`'s internal edges are
//! fixed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_chordal, Graph};
use crate::learn::{LearnOptions, LearnOutcome};
use crate::oracle::Oracle;
use crate::recovery::learn_by_rounds;

pub fn learn_minimal_chordal_imap(
    oracle: &dyn Oracle,
    opts: &LearnOptions,
) -> Result<LearnOutcome> {
    learn_by_rounds(oracle, opts, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImapVerdict {
    pub chordal: bool,
    pub imap: bool,
    pub minimal: bool,
}

/// Checks `learned` against the hidden graph of a separation model.
///
/// I-map holds iff `hidden ⊆ learned`. Minimality is brute force: no single
/// edge can be deleted while keeping both chordality and the I-map property.
/// A chordal supergraph with no removable fill edge has no chordal I-map
/// strictly inside it, so the single-edge test is exact.
pub fn verify_chordal_imap(hidden: &Graph, learned: &Graph) -> Result<ImapVerdict> {
    if hidden.node_count() != learned.node_count() {
        return Err(Error::arg(format!(
            "universe mismatch: hidden has {} nodes, learned has {}",
            hidden.node_count(),
            learned.node_count()
        )));
    }
    let chordal = is_chordal(learned);
    let imap = hidden.is_subgraph_of(learned);
    let minimal = chordal
        && imap
        && learned.edges().into_iter().all(|(u, v)| {
            // Removing a hidden edge always breaks the I-map property.
            if hidden.has_edge(u, v) {
                return true;
            }
            let mut smaller = learned.unmarked();
            smaller.remove_edge(u, v);
            !is_chordal(&smaller)
        });
    Ok(ImapVerdict {
        chordal,
        imap,
        minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::cycle4;
    use crate::oracle::SeparationOracle;

    fn learn(g: &Graph) -> Graph {
        learn_minimal_chordal_imap(&SeparationOracle::new(g.clone()), &LearnOptions::default())
            .unwrap()
            .graph
    }

    #[test]
    fn four_cycle_gets_one_chord() {
        let out = learn(&cycle4());
        assert_eq!(out.edge_count(), 5);
        assert!(cycle4().is_subgraph_of(&out));
        // pair 0-2 is tested first and separated by {1,3}, so 1-3 is the chord
        assert!(out.has_edge(1, 3));
        let v = verify_chordal_imap(&cycle4(), &out).unwrap();
        assert!(v.chordal && v.imap && v.minimal);
    }

    #[test]
    fn chordal_and_complete_inputs_are_reproduced() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(learn(&g), g);
        assert_eq!(learn(&Graph::complete(4)), Graph::complete(4));
    }

    #[test]
    fn verifier_cases() {
        let mut chorded = cycle4();
        chorded.add_edge(0, 2).unwrap();
        let v = verify_chordal_imap(&cycle4(), &chorded).unwrap();
        assert_eq!(
            v,
            ImapVerdict {
                chordal: true,
                imap: true,
                minimal: true
            }
        );

        let v = verify_chordal_imap(&cycle4(), &Graph::complete(4)).unwrap();
        assert_eq!(
            v,
            ImapVerdict {
                chordal: true,
                imap: true,
                minimal: false
            }
        );

        let v = verify_chordal_imap(&cycle4(), &cycle4()).unwrap();
        assert!(!v.chordal);

        assert!(verify_chordal_imap(&cycle4(), &Graph::new(3)).is_err());
    }
}
