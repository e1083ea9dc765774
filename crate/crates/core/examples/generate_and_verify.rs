//! Generate seeded instances, learn them, and check every run independently:
//! brute-force chordality and transcript replay against the hidden graph.

use chordal_learn::generator::{random_chordal, random_connected};
use chordal_learn::verifier::{chordal_bruteforce, replay_with_discipline};
use chordal_learn::{learn_minimal_chordal_imap, recover_chordal, LearnOptions, SeparationOracle};

fn main() -> chordal_learn::Result<()> {
    for seed in 1..=5 {
        let hidden = random_chordal(10, 4, 1, seed)?;
        let out = recover_chordal(
            &SeparationOracle::new(hidden.clone()),
            &LearnOptions::traced(),
        )?;
        let replay = replay_with_discipline(out.trace.as_deref().unwrap_or_default(), &hidden);
        println!(
            "chordal   seed {seed}: exact={} replay={:?}",
            out.graph == hidden,
            replay.map(|s| (s.queries, s.removals))
        );
    }
    for seed in 1..=5 {
        let hidden = random_connected(9, 0.25, seed)?;
        let out = learn_minimal_chordal_imap(
            &SeparationOracle::new(hidden.clone()),
            &LearnOptions::traced(),
        )?;
        let replay = replay_with_discipline(out.trace.as_deref().unwrap_or_default(), &hidden);
        println!(
            "connected seed {seed}: fill={} chordal={} replay_ok={}",
            out.graph.edge_count() - hidden.edge_count(),
            chordal_bruteforce(&out.graph)?,
            replay.is_ok()
        );
    }
    Ok(())
}
