//! Property testers: low-degree, adaptive and non-adaptive blow-up
//! collection testers, and their combinations.

mod adaptive;
mod combined;
mod low_degree;
mod nonadaptive;
mod params;
mod verdict;

pub use adaptive::adaptive_buc_test;
pub use combined::{combined_beta, combined_test, derive_seed, run_tester, TesterKind, Variant};
pub use low_degree::low_degree_test;
pub use nonadaptive::nonadaptive_buc_test;
pub use params::{
    alpha, low_degree_levels, low_degree_query_bound, AdaptiveSizes, LowDegreeLevel,
    NonAdaptiveSizes, TesterParams,
};
pub use verdict::{Decision, DegreeEstimateRecord, Evidence, Verdict};

use crate::exact::{Distinguisher, WitnessReport};
use std::collections::HashMap;

/// Bit-vector of a vertex's adjacency over a sampled set.
pub(crate) type Signature = Vec<u64>;

pub(crate) fn signature(t: &[usize], mut adj: impl FnMut(usize) -> crate::Result<bool>) -> crate::Result<Signature> {
    let mut bits = vec![0u64; t.len().div_ceil(64)];
    for (i, &w) in t.iter().enumerate() {
        if adj(w)? {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    Ok(bits)
}

/// Partitionability report when `candidates` (neighbors of `center`) show at
/// least `delta + 1` distinct signatures over `t`.
pub(crate) fn fan_report(
    center: usize,
    candidates: &[usize],
    sigs: &[&Signature],
    t: &[usize],
    delta: usize,
) -> Option<WitnessReport> {
    let mut seen: HashMap<&Signature, ()> = HashMap::new();
    let mut fan = Vec::new();
    let mut fan_sigs = Vec::new();
    for (&u, &s) in candidates.iter().zip(sigs) {
        if seen.insert(s, ()).is_none() {
            fan.push(u);
            fan_sigs.push(s);
            if fan.len() == delta + 1 {
                break;
            }
        }
    }
    if fan.len() <= delta {
        return None;
    }
    let mut distinguishers = Vec::new();
    for i in 0..fan.len() {
        for j in i + 1..fan.len() {
            let (word, diff) = fan_sigs[i]
                .iter()
                .zip(fan_sigs[j].iter())
                .enumerate()
                .map(|(k, (a, b))| (k, a ^ b))
                .find(|&(_, d)| d != 0)
                .expect("distinct signatures differ somewhere");
            let bit = word * 64 + diff.trailing_zeros() as usize;
            distinguishers.push(Distinguisher { i, j, w: t[bit] });
        }
    }
    Some(WitnessReport::Partitionability {
        center,
        fan,
        distinguishers,
    })
}
