//! Learning chordal graphs from conditional-independence oracles.
//!
//! The learners only talk to an [`oracle::Oracle`]; the bundled
//! [`oracle::SeparationOracle`] answers queries by vertex separation in a
//! hidden graph, which makes every result checkable.
//!
//! * [`recovery::recover_chordal`] recovers the graph of a decomposable model
//!   exactly.
//! * [`imap::learn_minimal_chordal_imap`] returns a minimal chordal I-map for
//!   graph-isomorphic models.
//! * [`clique_learner::learn_cliques`] reaches a minimal chordal I-map by
//!   splitting cliques and returns its clique list.
//! * [`verifier`] holds brute-force cross-checks and trace replay.

pub mod baseline;
pub mod bench;
pub mod cli;
pub mod clique_learner;
pub mod error;
pub mod generator;
pub mod graph;
pub mod imap;
pub mod learn;
pub mod oracle;
pub mod recovery;
pub mod verifier;

pub use clique_learner::{learn_cliques, CliqueOutcome};
pub use error::{Error, Result};
pub use graph::{Clique, Graph, NodeId};
pub use imap::{learn_minimal_chordal_imap, verify_chordal_imap, ImapVerdict};
pub use learn::{Guarantees, LearnOptions, LearnOutcome, LearnStats, ModelClass, TraceEvent};
pub use oracle::{IndependenceQuery, Oracle, SeparationOracle};
pub use recovery::{recover_chordal, verify_recovery};
