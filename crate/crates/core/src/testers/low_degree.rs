//! Multi-scale non-adaptive test for maximum degree at most `cεN`.
//!
//! A graph that is `βε`-far from the degree bound has many vertices of
//! excess degree, spread across dyadic degree ranges. Level `j` targets
//! degrees near `2^j·cεN`: such vertices are rarer as `j` grows but need
//! fewer probes to detect, so each level costs about `ε⁻¹` queries up to
//! logarithmic factors.

use super::params::{low_degree_levels, LowDegreeLevel, TesterParams};
use super::verdict::{DegreeEstimateRecord, Evidence, Verdict};
use crate::error::Result;
use crate::graph::Adjacency;
use crate::oracle::{rng_from_seed, sample_vertices, NonAdaptivePlan};

pub fn low_degree_test<A: Adjacency + ?Sized>(
    mut plan: NonAdaptivePlan<'_, A>,
    eps: f64,
    c: f64,
    beta: f64,
    params: &TesterParams,
    seed: u64,
) -> Result<Verdict> {
    let n = plan.n();
    let levels = low_degree_levels(n, eps, c, beta, params)?;
    let mut rng = rng_from_seed(seed);
    let samples: Vec<(Vec<usize>, Vec<usize>)> = levels
        .iter()
        .map(|l| {
            let vs = sample_vertices(&mut rng, n, l.vertices);
            let probes = sample_vertices(&mut rng, n, l.probes);
            (vs, probes)
        })
        .collect();
    for (vs, probes) in &samples {
        plan.commit_product(vs, probes)?;
    }
    plan.seal();

    // Levels that probe every vertex against every vertex read exact
    // degrees; compute them once.
    let mut exact_degrees: Option<Vec<usize>> = None;
    for (level, (vs, probes)) in levels.iter().zip(&samples) {
        if probes.is_empty() {
            continue;
        }
        let exhaustive = vs.len() == n && probes.len() == n;
        if exhaustive && exact_degrees.is_none() {
            let mut deg = vec![0usize; n];
            for u in 0..n {
                for v in u + 1..n {
                    if plan.answer(u, v)? {
                        deg[u] += 1;
                        deg[v] += 1;
                    }
                }
            }
            exact_degrees = Some(deg);
        }
        for &v in vs {
            let hits = match (&exact_degrees, exhaustive) {
                (Some(deg), true) => deg[v],
                _ => {
                    let mut hits = 0;
                    for &u in probes {
                        if u != v && plan.answer(v, u)? {
                            hits += 1;
                        }
                    }
                    hits
                }
            };
            if let Some(record) = judge(level, v, probes.len(), hits, n) {
                let premature = plan.premature_reads();
                return Ok(Verdict::reject(
                    Evidence::Degree(record),
                    plan.into_ledger(),
                    premature,
                ));
            }
        }
    }
    let premature = plan.premature_reads();
    Ok(Verdict::accept(plan.into_ledger(), premature))
}

fn judge(
    level: &LowDegreeLevel,
    vertex: usize,
    probes: usize,
    hits: usize,
    n: usize,
) -> Option<DegreeEstimateRecord> {
    let estimate = hits as f64 / probes as f64 * n as f64;
    (estimate > level.threshold).then_some(DegreeEstimateRecord {
        level: level.j,
        vertex,
        probes,
        hits,
        estimate,
        threshold: level.threshold,
    })
}
