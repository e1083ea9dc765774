//! Learn the clique list of a minimal chordal I-map by repeatedly splitting
//! cliques, then print it with the join tree built over it.

use chordal_learn::clique_learner::cliques_to_graph;
use chordal_learn::generator::random_connected;
use chordal_learn::graph::build_join_tree;
use chordal_learn::{learn_cliques, verify_chordal_imap, LearnOptions, SeparationOracle};

fn main() -> chordal_learn::Result<()> {
    let hidden = random_connected(9, 0.3, 11)?;
    println!("hidden edges: {:?}", hidden.edges());

    let out = learn_cliques(
        &SeparationOracle::new(hidden.clone()),
        &LearnOptions::default(),
    )?;
    for c in &out.cliques {
        println!("clique {:?}", c.nodes());
    }
    let tree = build_join_tree(&out.cliques)?;
    for e in &tree.edges {
        println!("tree edge {} - {} via {:?}", e.a, e.b, e.separator);
    }

    let filled = cliques_to_graph(&out.cliques, hidden.node_count());
    println!("verdict: {:?}", verify_chordal_imap(&hidden, &filled)?);
    println!("queries: {}", out.stats.queries_total);
    Ok(())
}
