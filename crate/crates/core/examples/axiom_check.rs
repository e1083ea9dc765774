//! Check the independence axioms on two separation models. Both satisfy
//! C1 through C5. Only the chordal one satisfies C8, and for the 4-cycle the
//! report carries a counterexample.

use chordal_learn::oracle::{check_axioms, Axiom, DEFAULT_AXIOM_CAP};
use chordal_learn::{Graph, SeparationOracle};

fn report(name: &str, g: Graph) -> chordal_learn::Result<()> {
    let r = check_axioms(&SeparationOracle::new(g), &Axiom::ALL, DEFAULT_AXIOM_CAP)?;
    println!("{name}:");
    for res in &r.results {
        let status = if res.pass { "holds" } else { "FAILS" };
        print!(
            "  {:<3} {:<22} {status}",
            res.axiom.to_string(),
            res.axiom.name()
        );
        if let Some(w) = &res.witness {
            print!("  ({})", w.detail);
        }
        println!();
    }
    Ok(())
}

fn main() -> chordal_learn::Result<()> {
    report(
        "path 0-1-2-3",
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)])?,
    )?;
    report(
        "4-cycle",
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])?,
    )
}
