//! Exact edit distances for small graphs.

use super::{DISTANCE_BUC_CAP, DISTANCE_LD_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;
use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;

/// Minimum number of pair edits turning `g` into a blow-up collection of `h`.
pub fn distance_to_buc(g: &Graph, h: &Graph) -> Result<usize> {
    distance_to_buc_capped(g, h, DISTANCE_BUC_CAP)
}

pub fn distance_to_buc_capped(g: &Graph, h: &Graph, cap: usize) -> Result<usize> {
    let n = g.n();
    if n > cap {
        return Err(Error::Capacity {
            what: "vertex count for BUC distance",
            size: n,
            cap,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    if h.n() == 0 {
        return Err(Error::arg("base graph has no vertices; only the empty graph is a member"));
    }
    // Each group costs its best within-group labeling; edges between groups
    // are deleted. Writing the total as |E| + Σ (best(S) − internal(S)) lets
    // the partition search run as a subset DP.
    let full = 1usize << n;
    let mut cost = vec![0i64; full];
    let mut vs = Vec::with_capacity(n);
    for set in 1..full {
        vs.clear();
        vs.extend((0..n).filter(|&v| set >> v & 1 == 1));
        let internal = vs
            .iter()
            .enumerate()
            .map(|(i, &u)| vs[i + 1..].iter().filter(|&&w| g.has_edge(u, w)).count())
            .sum::<usize>();
        let mut best = usize::MAX;
        let mut parts = vec![0usize; n];
        best_labeling(g, h, &vs, 0, 0, &mut parts, &mut best);
        cost[set] = best as i64 - internal as i64;
    }
    let mut f = vec![i64::MAX; full];
    f[0] = 0;
    for set in 1..full {
        let low = set & set.wrapping_neg();
        let rest = set ^ low;
        // enumerate subsets of `rest` and add the lowest vertex to each
        let mut sub = rest;
        loop {
            let group = sub | low;
            let cand = cost[group] + f[set ^ group];
            if cand < f[set] {
                f[set] = cand;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok((g.edge_count() as i64 + f[full - 1]) as usize)
}

fn best_labeling(
    g: &Graph,
    h: &Graph,
    vs: &[usize],
    k: usize,
    acc: usize,
    parts: &mut [usize],
    best: &mut usize,
) {
    if acc >= *best {
        return;
    }
    if k == vs.len() {
        *best = acc;
        return;
    }
    let v = vs[k];
    for p in 0..h.n() {
        let extra = vs[..k]
            .iter()
            .filter(|&&u| g.has_edge(u, v) != h.has_edge(parts[u], p))
            .count();
        parts[v] = p;
        best_labeling(g, h, vs, k + 1, acc + extra, parts, best);
    }
}

/// Largest number of edges of `g` that can be kept with every degree at
/// most `bound`.
///
/// Reduces simple b-matching to maximum matching: each vertex becomes
/// `min(deg, bound)` slots, each edge `uv` becomes a pair of gadget nodes
/// joined to each other and to the slots of `u` and `v` respectively. A
/// maximum matching has size `|E|` plus the maximum b-matching.
pub fn max_degree_bounded_edges(g: &Graph, bound: usize) -> usize {
    let deg = g.degrees();
    let mut gadget: UnGraph<(), ()> = UnGraph::default();
    let slots: Vec<Vec<_>> = deg
        .iter()
        .map(|&d| (0..d.min(bound)).map(|_| gadget.add_node(())).collect())
        .collect();
    let mut m = 0;
    for (u, v) in g.edges() {
        m += 1;
        let a = gadget.add_node(());
        let b = gadget.add_node(());
        gadget.add_edge(a, b, ());
        for &s in &slots[u] {
            gadget.add_edge(a, s, ());
        }
        for &s in &slots[v] {
            gadget.add_edge(b, s, ());
        }
    }
    maximum_matching(&gadget).len() - m
}

/// Minimum number of edge deletions leaving every degree at most `bound`.
pub fn distance_to_ld(g: &Graph, bound: usize) -> Result<usize> {
    distance_to_ld_capped(g, bound, DISTANCE_LD_CAP)
}

pub fn distance_to_ld_capped(g: &Graph, bound: usize, cap: usize) -> Result<usize> {
    if g.n() > cap {
        return Err(Error::Capacity {
            what: "vertex count for degree distance",
            size: g.n(),
            cap,
        });
    }
    Ok(g.edge_count() - max_degree_bounded_edges(g, bound))
}

/// `(⌈Σ_v max(0, deg(v) − bound) / 2⌉, Σ_v max(0, deg(v) − bound))`, the
/// bounds bracketing [`distance_to_ld`].
pub fn ld_excess_bounds(g: &Graph, bound: usize) -> (usize, usize) {
    let excess: usize = g.degrees().iter().map(|&d| d.saturating_sub(bound)).sum();
    (excess.div_ceil(2), excess)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::is_blowup_collection;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive over edge subsets.
    fn ld_oracle(g: &Graph, bound: usize) -> usize {
        let edges: Vec<_> = g.edges().collect();
        assert!(edges.len() <= 16);
        let mut best = 0;
        for mask in 0u32..1 << edges.len() {
            let mut deg = vec![0; g.n()];
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            if deg.iter().all(|&d| d <= bound) {
                best = best.max(mask.count_ones() as usize);
            }
        }
        edges.len() - best
    }

    /// Exhaustive over every graph on the same vertices.
    fn buc_oracle(g: &Graph, h: &Graph) -> usize {
        let pairs = g.n() * (g.n() - 1) / 2;
        (0u64..1 << pairs)
            .filter(|&m| is_blowup_collection(&Graph::from_pair_mask(g.n(), m), h).is_some())
            .map(|m| (m ^ g.pair_mask()).count_ones() as usize)
            .min()
            .unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        Graph::from_fn(n, |_, _| rng.random_bool(p))
    }

    #[test]
    fn buc_distance_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(distance_to_buc(&c4, &c4).unwrap(), 0);
        assert_eq!(distance_to_buc(&Graph::complete(4), &c4).unwrap(), 2);
        assert_eq!(distance_to_buc(&Graph::empty(7), &c4).unwrap(), 0);
        assert!(matches!(
            distance_to_buc(&Graph::empty(10), &c4),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn buc_distance_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for h in [Graph::complete(2), Graph::complete(3), Graph::path(3), Graph::cycle(4)] {
            for n in 1..=5 {
                for _ in 0..15 {
                    let g = random_graph(&mut rng, n, 0.5);
                    assert_eq!(distance_to_buc(&g, &h).unwrap(), buc_oracle(&g, &h), "{g:?} {h:?}");
                }
            }
        }
    }

    #[test]
    fn ld_examples() {
        assert_eq!(distance_to_ld(&Graph::star(4), 2).unwrap(), 2);
        assert_eq!(distance_to_ld(&Graph::cycle(9), 2).unwrap(), 0);
        assert_eq!(distance_to_ld(&Graph::complete(4), 2).unwrap(), 2);
        assert_eq!(ld_oracle(&Graph::complete(4), 2), 2);
        assert!(distance_to_ld(&Graph::empty(41), 1).is_err());
    }

    #[test]
    fn ld_matches_exhaustive_search_and_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 300 {
            let n = rng.random_range(2..=9);
            let p = rng.random_range(0.2..0.9);
            let g = random_graph(&mut rng, n, p);
            if g.edge_count() > 16 {
                continue;
            }
            let bound = rng.random_range(0..=4);
            let d = distance_to_ld(&g, bound).unwrap();
            assert_eq!(d, ld_oracle(&g, bound), "{g:?} bound {bound}");
            let (lo, hi) = ld_excess_bounds(&g, bound);
            assert!(lo <= d && d <= hi);
            checked += 1;
        }
    }

    #[test]
    fn ld_bounds_on_larger_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let p = rng.random_range(0.1..0.7);
            let g = random_graph(&mut rng, 30, p);
            let bound = rng.random_range(0..12);
            let d = distance_to_ld(&g, bound).unwrap();
            let (lo, hi) = ld_excess_bounds(&g, bound);
            assert!(lo <= d && d <= hi, "{lo} <= {d} <= {hi}");
        }
    }

    #[test]
    fn monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let k3 = Graph::complete(3);
        for _ in 0..60 {
            let n = rng.random_range(3..=7);
            let g = random_graph(&mut rng, n, 0.4);
            let u = rng.random_range(0..n);
            let v = (u + rng.random_range(1..n)) % n;
            let flipped = g.with_pair_toggled(u, v).unwrap();
            let (sparse, dense) = if g.has_edge(u, v) { (&flipped, &g) } else { (&g, &flipped) };
            for bound in 0..4 {
                assert!(distance_to_ld(dense, bound).unwrap() >= distance_to_ld(sparse, bound).unwrap());
            }
            let a = distance_to_buc(&g, &k3).unwrap() as i64;
            let b = distance_to_buc(&flipped, &k3).unwrap() as i64;
            assert!((a - b).abs() <= 1);
        }
    }
}
