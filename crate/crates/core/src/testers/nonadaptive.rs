//! Non-adaptive blow-up-collection tester: one committed plan covering
//! `S₁²`, `S₁ × T` and `S₂²`.

use super::params::{delta_eff, NonAdaptiveSizes, TesterParams};
use super::verdict::{Evidence, Verdict};
use super::{fan_report, signature};
use crate::error::Result;
use crate::exact::{is_blowup, is_blowup_collection, WitnessReport};
use crate::graph::{Adjacency, BaseGraphProfile, Graph};
use crate::oracle::{rng_from_seed, sample_vertices, NonAdaptivePlan};

pub fn nonadaptive_buc_test<A: Adjacency + ?Sized>(
    mut plan: NonAdaptivePlan<'_, A>,
    eps: f64,
    profile: &BaseGraphProfile,
    c: f64,
    params: &TesterParams,
    seed: u64,
) -> Result<Verdict> {
    let n = plan.n();
    let sizes = NonAdaptiveSizes::new(n, eps, profile, c, params)?;
    let mut rng = rng_from_seed(seed);
    let s1 = sample_vertices(&mut rng, n, sizes.s1);
    let t = sample_vertices(&mut rng, n, sizes.t);
    let s2 = sample_vertices(&mut rng, n, sizes.s2);
    plan.commit_clique(&s1)?;
    plan.commit_product(&s1, &t)?;
    plan.commit_clique(&s2)?;
    plan.seal();

    let delta = delta_eff(profile);
    let mut sigs = Vec::with_capacity(s1.len());
    for &u in &s1 {
        sigs.push(signature(&t, |w| if w == u { Ok(false) } else { plan.answer(u, w) })?);
    }
    // neighbors inside S₁, each pair read once
    let mut near: Vec<Vec<usize>> = vec![Vec::new(); s1.len()];
    for b in 0..s1.len() {
        for a in 0..b {
            if plan.answer(s1[a], s1[b])? {
                near[a].push(b);
                near[b].push(a);
            }
        }
    }
    for (iv, &v) in s1.iter().enumerate() {
        near[iv].sort_unstable();
        let cands: Vec<usize> = near[iv].iter().map(|&i| s1[i]).collect();
        let cand_sigs: Vec<&_> = near[iv].iter().map(|&i| &sigs[i]).collect();
        if let Some(report) = fan_report(v, &cands, &cand_sigs, &t, delta) {
            let premature = plan.premature_reads();
            return Ok(Verdict::reject(Evidence::Witness(report), plan.into_ledger(), premature));
        }
    }

    let k = s2.len();
    let mut sub = Graph::with_vertices(k);
    for a in 0..k {
        for b in a + 1..k {
            if plan.answer(s2[a], s2[b])? {
                sub.insert_edge(a, b);
            }
        }
    }
    if is_blowup_collection(&sub, profile.graph()).is_none() {
        let local = minimize_witness(&sub, profile.graph());
        let vertices = local.into_iter().map(|i| s2[i]).collect();
        let premature = plan.premature_reads();
        return Ok(Verdict::reject(
            Evidence::Witness(WitnessReport::InducedSubgraph { vertices }),
            plan.into_ledger(),
            premature,
        ));
    }
    let premature = plan.premature_reads();
    Ok(Verdict::accept(plan.into_ledger(), premature))
}

/// Inclusion-minimal vertex set of `g` inducing a non-member. Starts from a
/// component that is not a blow-up and deletes vertices greedily; a vertex
/// kept once stays necessary because membership is hereditary.
pub(crate) fn minimize_witness(g: &Graph, h: &Graph) -> Vec<usize> {
    let comp = g
        .connected_components()
        .into_iter()
        .find(|comp| {
            let sub = g.induced_subgraph(comp).expect("component is in range");
            is_blowup(&sub, h).is_none()
        })
        .expect("a non-member has a component that is not a blow-up");
    let mut keep = comp;
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        let sub = g.induced_subgraph(&trial).expect("subset is in range");
        if is_blowup_collection(&sub, h).is_none() {
            keep = trial;
        } else {
            i += 1;
        }
    }
    keep
}
