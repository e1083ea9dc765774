//! Query counts of the learners against the naive baseline on a small grid,
//! as CSV on stdout.

use chordal_learn::bench::{run_bench, to_csv, Algorithm, BenchConfig};

fn main() -> chordal_learn::Result<()> {
    let cfg = BenchConfig {
        sizes: vec![10, 15],
        seeds: (1..=5).collect(),
        algorithms: vec![Algorithm::Recover, Algorithm::Cliques, Algorithm::Naive],
        ..Default::default()
    };
    let rows = run_bench(&cfg)?;
    print!("{}", to_csv(&rows, false));
    Ok(())
}
