//! Adaptive blow-up-collection tester.
//!
//! Stage 1 looks for a vertex whose neighbors show more than `Δ` distinct
//! neighborhoods on a random probe set. Stage 2 grows a connected set `U` of
//! at most `W` vertices by random neighbor steps and checks `G|_U`.

use super::params::{delta_eff, AdaptiveSizes, TesterParams};
use super::verdict::{Evidence, Verdict};
use super::{fan_report, signature};
use crate::error::Result;
use crate::exact::{is_blowup_collection, WitnessReport};
use crate::graph::{Adjacency, BaseGraphProfile, Graph};
use crate::oracle::{sample_vertices, AdaptiveSession};
use rand::Rng;

pub fn adaptive_buc_test<A: Adjacency + ?Sized>(
    mut session: AdaptiveSession<'_, A>,
    eps: f64,
    profile: &BaseGraphProfile,
    c: f64,
    params: &TesterParams,
) -> Result<Verdict> {
    let n = session.n();
    let sizes = AdaptiveSizes::new(n, eps, profile, c, params)?;
    if n < 2 {
        return Ok(Verdict::accept(session.into_ledger(), 0));
    }
    let delta = delta_eff(profile);

    for _ in 0..sizes.iter1 {
        let v = session.rng().random_range(0..n);
        let s = sample_vertices(session.rng(), n, sizes.s);
        let mut gamma = Vec::new();
        for &u in &s {
            if u != v && session.probe(v, u)? {
                gamma.push(u);
            }
        }
        let sbar: Vec<usize> = if gamma.len() <= sizes.sbar_cap {
            gamma
        } else {
            let mut idx = rand::seq::index::sample(session.rng(), gamma.len(), sizes.sbar_cap).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| gamma[i]).collect()
        };
        let t = sample_vertices(session.rng(), n, sizes.t);
        let mut sigs = Vec::with_capacity(sbar.len());
        for &u in &sbar {
            sigs.push(signature(&t, |w| if w == u { Ok(false) } else { session.probe(u, w) })?);
        }
        let refs: Vec<_> = sigs.iter().collect();
        if let Some(report) = fan_report(v, &sbar, &refs, &t, delta) {
            return Ok(Verdict::reject(
                Evidence::Witness(report),
                session.into_ledger(),
                0,
            ));
        }
    }

    for _ in 0..sizes.iter2 {
        let v1 = session.rng().random_range(0..n);
        let mut u_set = vec![v1];
        for _ in 2..=sizes.w {
            let tj = sample_vertices(session.rng(), n, sizes.tj);
            let mut gamma = Vec::new();
            for &t in &tj {
                // every pair of U × T_j is probed so that G|_U ends up fully known
                let mut hit = false;
                for &u in &u_set {
                    if u != t && session.probe(u, t)? {
                        hit = true;
                    }
                }
                if hit {
                    gamma.push(t);
                }
            }
            if gamma.is_empty() {
                break;
            }
            let mut next = None;
            for _ in 0..gamma.len() {
                let x = gamma[session.rng().random_range(0..gamma.len())];
                if !u_set.contains(&x) {
                    next = Some(x);
                    break;
                }
            }
            match next {
                Some(x) => u_set.push(x),
                None => break,
            }
        }
        if u_set.len() < 2 {
            continue;
        }
        let before = session.ledger().distinct_count();
        let k = u_set.len();
        let mut sub = Graph::with_vertices(k);
        for a in 0..k {
            for b in a + 1..k {
                if session.probe(u_set[a], u_set[b])? {
                    sub.insert_edge(a, b);
                }
            }
        }
        debug_assert_eq!(before, session.ledger().distinct_count());
        if is_blowup_collection(&sub, profile.graph()).is_none() {
            u_set.sort_unstable();
            return Ok(Verdict::reject(
                Evidence::Witness(WitnessReport::InducedSubgraph { vertices: u_set }),
                session.into_ledger(),
                0,
            ));
        }
    }
    Ok(Verdict::accept(session.into_ledger(), 0))
}
