//! A chordless 4-cycle has no chordal perfect map. The I-map learner adds
//! exactly one chord, and the brute-force enumerator confirms that the result
//! is one of the two minimal chordal I-maps.

use chordal_learn::verifier::all_minimal_chordal_imaps;
use chordal_learn::{
    learn_minimal_chordal_imap, verify_chordal_imap, Graph, LearnOptions, SeparationOracle,
};

fn main() -> chordal_learn::Result<()> {
    let square = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])?;
    let out = learn_minimal_chordal_imap(
        &SeparationOracle::new(square.clone()),
        &LearnOptions::default(),
    )?;
    let added: Vec<_> = out
        .graph
        .edges()
        .into_iter()
        .filter(|&(u, v)| !square.has_edge(u, v))
        .collect();
    println!("learned edges : {:?}", out.graph.edges());
    println!("chord added   : {added:?}");
    println!(
        "verdict       : {:?}",
        verify_chordal_imap(&square, &out.graph)?
    );

    let all = all_minimal_chordal_imaps(&square)?;
    println!("{} minimal chordal I-maps exist:", all.len());
    for g in &all {
        let mark = if *g == out.graph { "  <- learned" } else { "" };
        println!("  {:?}{mark}", g.edges());
    }
    Ok(())
}
