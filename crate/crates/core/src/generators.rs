//! Seeded instance generators: members of `BUC(H) ∩ LD`, structurally far
//! graphs, perturbed members and degree violators.

use crate::error::{Error, Result};
use crate::graph::{pair_count, BaseGraphProfile, Graph, PartLabel, Partitioning};
use crate::oracle::rng_from_seed;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::arg(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

/// Relabels so that position `i` of `labels` moves to a random vertex.
fn shuffled(labels: Vec<PartLabel>, rng: &mut ChaCha8Rng) -> Partitioning {
    let mut perm: Vec<usize> = (0..labels.len()).collect();
    perm.shuffle(rng);
    let mut out = labels.clone();
    for (i, &p) in perm.iter().enumerate() {
        out[p] = labels[i];
    }
    Partitioning::new(out)
}

/// Labels of a random member of `BUC(H)` with every degree at most `cεN`.
///
/// Part sizes are uniform in `[1, ⌊cεN/(Δ+1)⌋]`, so a vertex sees at most
/// `Δ` parts of that size. The last group is truncated; a remainder smaller
/// than `h` goes into part 0 of its own group.
pub fn member_labels(h: &Graph, n: usize, eps: f64, c: f64, seed: u64) -> Result<Partitioning> {
    check_eps(eps)?;
    if h.n() == 0 || n < h.n() {
        return Err(Error::arg(format!(
            "need at least h = {} vertices, got N = {n}",
            h.n()
        )));
    }
    let delta = h.max_degree();
    let m = (c * eps * n as f64 / (delta + 1) as f64).floor() as usize;
    if m == 0 {
        return Err(Error::arg(format!(
            "cεN/(Δ+1) = {:.3} leaves no room for a part",
            c * eps * n as f64 / (delta + 1) as f64
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut labels = Vec::with_capacity(n);
    let mut group = 0;
    while labels.len() < n {
        let left = n - labels.len();
        if left < h.n() {
            labels.extend(std::iter::repeat_n(PartLabel { group, part: 0 }, left));
            break;
        }
        for part in 0..h.n() {
            let left = n - labels.len();
            let size = rng.random_range(1..=m).min(left);
            labels.extend(std::iter::repeat_n(PartLabel { group, part }, size));
        }
        group += 1;
    }
    Ok(shuffled(labels, &mut rng))
}

/// Random member of `BUC(H) ∩ LD_{cε}` with its certificate.
pub fn gen_member(h: &Graph, n: usize, eps: f64, c: f64, seed: u64) -> Result<(Graph, Partitioning)> {
    let labels = member_labels(h, n, eps, c, seed)?;
    let g = labels.realize(h);
    debug_assert!(labels.verify_collection(&g, h));
    Ok((g, labels))
}

/// Labels of disjoint blow-ups of `C_{t+1}` with parts of size
/// `max(1, ⌊εN⌋)`; leftover vertices are isolated.
pub fn far_cycle_labels(t: usize, n: usize, eps: f64, seed: u64) -> Result<Partitioning> {
    check_eps(eps)?;
    if t < 4 {
        return Err(Error::arg(format!("cycle length t must be at least 4, got {t}")));
    }
    let s = ((eps * n as f64).floor() as usize).max(1);
    let group_size = (t + 1) * s;
    let groups = n / group_size;
    if groups == 0 {
        return Err(Error::arg(format!(
            "N = {n} is smaller than one C{} group of {group_size} vertices",
            t + 1
        )));
    }
    let mut labels = Vec::with_capacity(n);
    for group in 0..groups {
        for part in 0..=t {
            labels.extend(std::iter::repeat_n(PartLabel { group, part }, s));
        }
    }
    let mut group = groups;
    while labels.len() < n {
        labels.push(PartLabel { group, part: 0 });
        group += 1;
    }
    let mut rng = rng_from_seed(seed);
    Ok(shuffled(labels, &mut rng))
}

/// Blow-ups of `C_{t+1}`, intended to be far from `BUC(C_t)`.
pub fn gen_far_cycle_mismatch(t: usize, n: usize, eps: f64, seed: u64) -> Result<Graph> {
    let labels = far_cycle_labels(t, n, eps, seed)?;
    Ok(labels.realize(&Graph::cycle(t + 1)))
}

/// `base` plus `count` uniformly chosen pairs joining different groups of
/// `cert`.
pub fn gen_planted_edges(base: &Graph, cert: &Partitioning, count: usize, seed: u64) -> Result<Graph> {
    if cert.len() != base.n() {
        return Err(Error::arg("certificate does not match the base graph"));
    }
    let n = base.n();
    let mut group_sizes = vec![0usize; cert.group_count()];
    for l in cert.labels() {
        group_sizes[l.group] += 1;
    }
    let available = pair_count(n) - group_sizes.iter().map(|&s| pair_count(s)).sum::<usize>();
    if count > available {
        return Err(Error::arg(format!(
            "{count} planted edges requested, only {available} cross-group pairs exist"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let cross = |u: usize, v: usize| cert.label(u).group != cert.label(v).group;
    let chosen: Vec<(usize, usize)> = if 2 * count <= available {
        let mut set = HashSet::with_capacity(count);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            let pair = (u.min(v), u.max(v));
            if u != v && cross(u, v) && set.insert(pair) {
                out.push(pair);
            }
        }
        out
    } else {
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .filter(|&(u, v)| cross(u, v))
            .collect();
        all.shuffle(&mut rng);
        all.truncate(count);
        all
    };
    let mut g = base.clone();
    for (u, v) in chosen {
        g.insert_edge(u, v);
    }
    Ok(g)
}

/// Disjoint cliques of `⌈4cεN⌉ + 1` vertices (the remainder is spread
/// round-robin), so every degree is at least `4cεN`.
pub fn gen_high_degree(n: usize, eps: f64, c: f64, seed: u64) -> Result<Graph> {
    check_eps(eps)?;
    let k = (4.0 * c * eps * n as f64).ceil() as usize + 1;
    if k > n {
        return Err(Error::arg(format!("clique size {k} exceeds N = {n}")));
    }
    let cliques = n / k;
    let mut clique_of: Vec<usize> = (0..n).map(|i| if i < cliques * k { i / k } else { i % cliques }).collect();
    let mut rng = rng_from_seed(seed);
    clique_of.shuffle(&mut rng);
    Ok(Graph::from_fn(n, |u, v| clique_of[u] == clique_of[v]))
}

/// Instance families for the harness and the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum GenKind {
    Member,
    FarCycleMismatch { t: usize },
    PlantedEdges { count: usize },
    HighDegree,
}

impl GenKind {
    pub fn name(&self) -> &'static str {
        match self {
            GenKind::Member => "member",
            GenKind::FarCycleMismatch { .. } => "far-cycle-mismatch",
            GenKind::PlantedEdges { .. } => "planted-edges",
            GenKind::HighDegree => "high-degree",
        }
    }
}

/// A generator invocation.
#[derive(Clone, Debug)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub eps: f64,
    pub c: f64,
    pub seed: u64,
}

/// Generated graph with the member certificate when one is known.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub certificate: Option<Partitioning>,
}

impl GenSpec {
    /// `h` is required by the member and planted-edges families.
    pub fn generate(&self, h: Option<&BaseGraphProfile>) -> Result<Generated> {
        let need_h = || h.map(|p| p.graph()).ok_or_else(|| Error::Config(format!("{} needs a base graph", self.kind.name())));
        match self.kind {
            GenKind::Member => {
                let (graph, cert) = gen_member(need_h()?, self.n, self.eps, self.c, self.seed)?;
                Ok(Generated {
                    graph,
                    certificate: Some(cert),
                })
            }
            GenKind::FarCycleMismatch { t } => Ok(Generated {
                graph: gen_far_cycle_mismatch(t, self.n, self.eps, self.seed)?,
                certificate: None,
            }),
            GenKind::PlantedEdges { count } => {
                let (base, cert) = gen_member(need_h()?, self.n, self.eps, self.c, self.seed)?;
                let graph = gen_planted_edges(&base, &cert, count, self.seed.wrapping_add(1))?;
                Ok(Generated {
                    graph,
                    certificate: None,
                })
            }
            GenKind::HighDegree => Ok(Generated {
                graph: gen_high_degree(self.n, self.eps, self.c, self.seed)?,
                certificate: None,
            }),
        }
    }
}
