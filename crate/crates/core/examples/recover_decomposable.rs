//! Recover a hidden chordal graph from separation queries alone.
//!
//! Run with `cargo run --example recover_decomposable -- [n] [seed]`.

use chordal_learn::generator::random_chordal;
use chordal_learn::learn::trace_to_text;
use chordal_learn::{recover_chordal, LearnOptions, SeparationOracle};

fn main() -> chordal_learn::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(12, |s| s.parse().expect("n"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));

    let hidden = random_chordal(n, 4.min(n), 1, seed)?;
    let out = recover_chordal(
        &SeparationOracle::new(hidden.clone()),
        &LearnOptions::traced(),
    )?;

    println!("hidden  : {:?}", hidden.edges());
    println!("learned : {:?}", out.graph.edges());
    println!("exact   : {}", out.graph == hidden);
    println!(
        "queries : {} total, by order {:?}",
        out.stats.queries_total, out.stats.queries_by_order
    );
    let trace = out.trace.unwrap_or_default();
    println!("first trace lines:");
    for line in trace_to_text(&trace).lines().take(8) {
        println!("  {line}");
    }
    Ok(())
}
