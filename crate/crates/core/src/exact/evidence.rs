use super::is_blowup_collection;
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};
use itertools::Itertools;
use std::collections::HashMap;

/// A vertex `w` whose adjacency differs between `fan[i]` and `fan[j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Distinguisher {
    pub i: usize,
    pub j: usize,
    pub w: usize,
}

/// Rejection certificate produced by a blow-up-collection tester.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessReport {
    /// `center` has neighbors `fan` whose neighborhoods are pairwise
    /// different, as shown by `distinguishers`. In a blow-up collection every
    /// vertex's neighbors fall into at most `Δ(H)` neighborhood classes, so a
    /// fan of `Δ + 1` rules membership out.
    Partitionability {
        center: usize,
        fan: Vec<usize>,
        distinguishers: Vec<Distinguisher>,
    },
    /// A vertex set whose induced subgraph is not a blow-up collection.
    InducedSubgraph { vertices: Vec<usize> },
}

impl WitnessReport {
    pub fn kind(&self) -> &'static str {
        match self {
            WitnessReport::Partitionability { .. } => "partitionability",
            WitnessReport::InducedSubgraph { .. } => "induced-subgraph",
        }
    }
}

#[inline]
fn adj<A: Adjacency + ?Sized>(g: &A, u: usize, v: usize) -> bool {
    u != v && g.adjacent(u, v)
}

/// Checks a report against the true graph.
pub fn verify_evidence<A: Adjacency + ?Sized>(
    g: &A,
    report: &WitnessReport,
    h: &Graph,
    delta: usize,
) -> bool {
    let n = g.vertex_count();
    match report {
        WitnessReport::Partitionability {
            center,
            fan,
            distinguishers,
        } => {
            let center = *center;
            if center >= n || fan.len() != delta + 1 || !fan.iter().all_unique() {
                return false;
            }
            if !fan.iter().all(|&u| u < n && adj(g, center, u)) {
                return false;
            }
            let mut covered = vec![vec![false; fan.len()]; fan.len()];
            for d in distinguishers {
                if d.i >= fan.len() || d.j >= fan.len() || d.i == d.j || d.w >= n {
                    return false;
                }
                if adj(g, fan[d.i], d.w) == adj(g, fan[d.j], d.w) {
                    return false;
                }
                covered[d.i][d.j] = true;
                covered[d.j][d.i] = true;
            }
            (0..fan.len()).tuple_combinations().all(|(i, j)| covered[i][j])
        }
        WitnessReport::InducedSubgraph { vertices } => {
            if !vertices.iter().all(|&v| v < n) || !vertices.iter().all_unique() {
                return false;
            }
            let sub = Graph::from_adjacency(g, vertices);
            is_blowup_collection(&sub, h).is_none()
        }
    }
}

/// Representatives `u_1..u_k ∈ Γ(v)` whose similarity classes
/// `C(u) = {w ∈ Γ(v) : |Γ(w) △ Γ(u)| < threshold}` cover at least
/// `|Γ(v)| − threshold` neighbors of `v`; `None` if no `k` of them do.
///
/// Fewer than `k` representatives are returned when `Γ(v)` has fewer
/// distinct neighborhoods.
pub fn is_partitionable(
    g: &Graph,
    v: usize,
    k: usize,
    threshold: usize,
) -> Result<Option<Vec<usize>>> {
    if v >= g.n() {
        return Err(Error::arg(format!("vertex {v} outside 0..{}", g.n())));
    }
    let rows = g.neighborhood_rows();
    let nbrs = g.neighbors(v);
    let need = nbrs.len().saturating_sub(threshold);

    // C(u) depends on u only through Γ(u)
    let mut classes: HashMap<&[u64], usize> = HashMap::new();
    let mut reps = Vec::new();
    for &u in &nbrs {
        classes.entry(rows[u].as_slice()).or_insert_with(|| {
            reps.push(u);
            reps.len() - 1
        });
    }
    let symdiff = |a: usize, b: usize| -> usize {
        rows[a]
            .iter()
            .zip(&rows[b])
            .map(|(x, y)| (x ^ y).count_ones() as usize)
            .sum()
    };
    let words = nbrs.len().div_ceil(64).max(1);
    let cover: Vec<Vec<u64>> = reps
        .iter()
        .map(|&r| {
            let mut bits = vec![0u64; words];
            for (i, &w) in nbrs.iter().enumerate() {
                if symdiff(r, w) < threshold {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let pick = k.min(reps.len());
    for combo in (0..reps.len()).combinations(pick) {
        let mut union = vec![0u64; words];
        for &c in &combo {
            for (u, b) in union.iter_mut().zip(&cover[c]) {
                *u |= b;
            }
        }
        let covered: usize = union.iter().map(|b| b.count_ones() as usize).sum();
        if covered >= need {
            return Ok(Some(combo.into_iter().map(|c| reps[c]).collect()));
        }
    }
    Ok(None)
}
