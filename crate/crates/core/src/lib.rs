//! Property testers for blow-up collections in the dense-graph model, with
//! exact oracles for membership, witnesses and edit distances.

pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod testers;

pub use error::{Error, Result};
pub use exact::{Distinguisher, WitnessReport};
pub use graph::{Adjacency, BaseGraphProfile, Graph, PartLabel, Partitioning, WitnessBound};
pub use oracle::{AdaptiveSession, NonAdaptivePlan, QueryLedger};
pub use testers::{Decision, Evidence, TesterKind, TesterParams, Verdict};
