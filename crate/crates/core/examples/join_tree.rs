//! Chordality test, maximal cliques and join tree of a small chordal graph,
//! plus a DOT rendering.

use chordal_learn::graph::io::to_dot;
use chordal_learn::graph::{
    build_join_tree, is_chordal, maximal_cliques_chordal, perfect_elimination_ordering,
};
use chordal_learn::Graph;

fn main() -> chordal_learn::Result<()> {
    let g = Graph::from_edges(
        7,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 3),
            (3, 4),
            (4, 5),
            (3, 5),
            (5, 6),
        ],
    )?;
    println!("chordal: {}", is_chordal(&g));
    println!("elimination order: {:?}", perfect_elimination_ordering(&g));

    let cliques = maximal_cliques_chordal(&g)?;
    let tree = build_join_tree(&cliques)?;
    for (i, c) in tree.cliques.iter().enumerate() {
        println!("C{i} = {:?}", c.nodes());
    }
    for e in &tree.edges {
        println!("C{} -- C{}  separator {:?}", e.a, e.b, e.separator);
    }
    println!(
        "running intersection: {}",
        tree.satisfies_running_intersection()
    );
    print!("{}", to_dot(&g, "example"));
    Ok(())
}
