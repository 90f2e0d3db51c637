use crate::exact::{verify_evidence, WitnessReport};
use crate::graph::{Adjacency, BaseGraphProfile};
use crate::oracle::QueryLedger;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        }
    }
}

/// Statistical evidence from the low-degree tester; not a certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeEstimateRecord {
    pub level: usize,
    pub vertex: usize,
    /// Distinct vertices the degree was probed against.
    pub probes: usize,
    pub hits: usize,
    /// `hits / probes · N`.
    pub estimate: f64,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    Witness(WitnessReport),
    Degree(DegreeEstimateRecord),
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Witness(r) => r.kind(),
            Evidence::Degree(_) => "degree-estimate",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub decision: Decision,
    pub evidence: Option<Evidence>,
    pub ledger: QueryLedger,
    /// Answers requested from a non-adaptive plan before it was sealed.
    pub premature_reads: usize,
}

impl Verdict {
    pub(crate) fn accept(ledger: QueryLedger, premature_reads: usize) -> Self {
        Verdict {
            decision: Decision::Accept,
            evidence: None,
            ledger,
            premature_reads,
        }
    }

    pub(crate) fn reject(evidence: Evidence, ledger: QueryLedger, premature_reads: usize) -> Self {
        Verdict {
            decision: Decision::Reject,
            evidence: Some(evidence),
            ledger,
            premature_reads,
        }
    }

    pub fn is_accept(&self) -> bool {
        self.decision == Decision::Accept
    }

    pub fn distinct_queries(&self) -> usize {
        self.ledger.distinct_count()
    }

    pub fn evidence_kind(&self) -> &'static str {
        self.evidence.as_ref().map_or("none", Evidence::kind)
    }

    pub fn witness(&self) -> Option<&WitnessReport> {
        match &self.evidence {
            Some(Evidence::Witness(r)) => Some(r),
            _ => None,
        }
    }

    /// False only when a witness report fails on the true graph. Degree
    /// estimates carry no certificate and always pass.
    pub fn evidence_is_sound<A: Adjacency + ?Sized>(&self, g: &A, profile: &BaseGraphProfile) -> bool {
        match self.witness() {
            Some(r) => verify_evidence(g, r, profile.graph(), profile.delta().max(1)),
            None => true,
        }
    }
}
