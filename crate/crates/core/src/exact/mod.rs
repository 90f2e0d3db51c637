//! Exact combinatorial oracles used to validate the testers.

mod bruteforce;
mod composition;
mod distance;
mod evidence;
mod membership;
mod witness;

pub use bruteforce::{buc_membership_bruteforce, buc_membership_bruteforce_capped};
pub use composition::{check_distance_composition, CompositionChecker, CompositionOutcome};
pub use distance::{
    distance_to_buc, distance_to_buc_capped, distance_to_ld, distance_to_ld_capped,
    ld_excess_bounds, max_degree_bounded_edges,
};
pub use evidence::{is_partitionable, verify_evidence, Distinguisher, WitnessReport};
pub use membership::{is_blowup, is_blowup_collection, QuotientGraph};
pub use witness::{
    catalog_text, compute_w, minimal_witnesses, minimal_witnesses_capped, parse_catalog,
    profile_with_w, twin_free_bound,
};

pub const BRUTEFORCE_CAP: usize = 8;
pub const DISTANCE_BUC_CAP: usize = 9;
pub const DISTANCE_LD_CAP: usize = 40;
pub const ENUMERATION_CAP: usize = 7;
pub const COMPOSITION_CAP: usize = 6;
