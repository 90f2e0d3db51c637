//! Degree test followed by a blow-up-collection test at tolerance `ε/3`.

use super::adaptive::adaptive_buc_test;
use super::low_degree::low_degree_test;
use super::nonadaptive::nonadaptive_buc_test;
use super::params::{delta_eff, TesterParams};
use super::verdict::Verdict;
use crate::error::{Error, Result};
use crate::graph::{Adjacency, BaseGraphProfile};
use crate::oracle::{open_adaptive, open_plan};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Adaptive,
    NonAdaptive,
}

/// `β = 1/(18·c·Δ²)`.
pub fn combined_beta(profile: &BaseGraphProfile, c: f64) -> f64 {
    let d = delta_eff(profile) as f64;
    1.0 / (18.0 * c * d * d)
}

/// Independent seed for a sub-stage (splitmix64 finalizer).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn combined_test<A: Adjacency + ?Sized>(
    variant: Variant,
    g: &A,
    eps: f64,
    profile: &BaseGraphProfile,
    c: f64,
    params: &TesterParams,
    seed: u64,
) -> Result<Verdict> {
    let beta = combined_beta(profile, c);
    let degree = low_degree_test(open_plan(g), eps, c, beta, params, seed)?;
    if !degree.is_accept() {
        return Ok(degree);
    }
    let sub_seed = derive_seed(seed, 1);
    let buc = match variant {
        Variant::Adaptive => adaptive_buc_test(open_adaptive(g, sub_seed), eps / 3.0, profile, c, params)?,
        Variant::NonAdaptive => {
            nonadaptive_buc_test(open_plan(g), eps / 3.0, profile, c, params, sub_seed)?
        }
    };
    let mut ledger = degree.ledger;
    ledger.merge(&buc.ledger);
    Ok(Verdict {
        decision: buc.decision,
        evidence: buc.evidence,
        ledger,
        premature_reads: degree.premature_reads + buc.premature_reads,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TesterKind {
    LowDegree,
    Adaptive,
    NonAdaptive,
    CombinedAdaptive,
    CombinedNonAdaptive,
}

impl TesterKind {
    pub const ALL: [TesterKind; 5] = [
        TesterKind::LowDegree,
        TesterKind::Adaptive,
        TesterKind::NonAdaptive,
        TesterKind::CombinedAdaptive,
        TesterKind::CombinedNonAdaptive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TesterKind::LowDegree => "low-degree",
            TesterKind::Adaptive => "adaptive",
            TesterKind::NonAdaptive => "nonadaptive",
            TesterKind::CombinedAdaptive => "combined-adaptive",
            TesterKind::CombinedNonAdaptive => "combined-nonadaptive",
        }
    }
}

impl fmt::Display for TesterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TesterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TesterKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown tester `{s}`")))
    }
}

/// Runs one tester on a fresh oracle over `g`.
pub fn run_tester<A: Adjacency + ?Sized>(
    kind: TesterKind,
    g: &A,
    eps: f64,
    profile: &BaseGraphProfile,
    c: f64,
    params: &TesterParams,
    seed: u64,
) -> Result<Verdict> {
    match kind {
        TesterKind::LowDegree => {
            let beta = params.beta.unwrap_or_else(|| combined_beta(profile, c));
            low_degree_test(open_plan(g), eps, c, beta, params, seed)
        }
        TesterKind::Adaptive => adaptive_buc_test(open_adaptive(g, seed), eps, profile, c, params),
        TesterKind::NonAdaptive => nonadaptive_buc_test(open_plan(g), eps, profile, c, params, seed),
        TesterKind::CombinedAdaptive => combined_test(Variant::Adaptive, g, eps, profile, c, params, seed),
        TesterKind::CombinedNonAdaptive => {
            combined_test(Variant::NonAdaptive, g, eps, profile, c, params, seed)
        }
    }
}
