//! Minimal witnesses against `BUC(H)` and the parameter `W(H)`.
//!
//! A minimal witness is connected, and deleting a non-cut vertex from it
//! leaves a connected member. Likewise every connected member on `k`
//! vertices extends a connected member on `k − 1`. So the search grows a
//! frontier of connected members one vertex at a time and inspects each
//! extension.

use super::{is_blowup_collection, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::graph::{BaseGraphProfile, Graph, WitnessBound};
use std::collections::BTreeSet;

/// Isomorphism-invariant key for graphs on at most 8 vertices: the smallest
/// pair mask over all relabelings that keep vertices sorted by degree.
pub(crate) fn canonical_code(g: &Graph) -> (usize, u64) {
    let n = g.n();
    assert!(n <= 8, "canonical codes are for tiny graphs");
    let deg = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || deg[order[i]] != deg[order[start]] {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    permute_blocks(g, &mut order, &blocks, 0, 0, &mut best);
    if n == 0 {
        best = 0;
    }
    (n, best)
}

/// Visits every ordering that permutes vertices only within their degree
/// block; `i` is the next position to fill.
fn permute_blocks(
    g: &Graph,
    order: &mut [usize],
    blocks: &[(usize, usize)],
    b: usize,
    i: usize,
    best: &mut u64,
) {
    if b == blocks.len() {
        // order[i] is the vertex placed at position i
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut mask = 0u64;
        for (u, v) in g.edges() {
            mask |= 1 << crate::graph::pair_index(pos[u], pos[v]);
        }
        *best = (*best).min(mask);
        return;
    }
    let (_, hi) = blocks[b];
    if i == hi {
        return permute_blocks(g, order, blocks, b + 1, hi, best);
    }
    for j in i..hi {
        order.swap(i, j);
        permute_blocks(g, order, blocks, b, i + 1, best);
        order.swap(i, j);
    }
}

fn check_base(h: &Graph) -> Result<()> {
    if h.n() == 0 {
        return Err(Error::arg("base graph must have at least one vertex"));
    }
    Ok(())
}

/// All minimal witnesses against `BUC(h)` with at most `n_max` vertices, one
/// per isomorphism class, ordered by size and then canonical code.
pub fn minimal_witnesses(h: &Graph, n_max: usize) -> Result<Vec<Graph>> {
    minimal_witnesses_capped(h, n_max, ENUMERATION_CAP)
}

pub fn minimal_witnesses_capped(h: &Graph, n_max: usize, cap: usize) -> Result<Vec<Graph>> {
    if n_max > cap {
        return Err(Error::Capacity {
            what: "witness size for enumeration",
            size: n_max,
            cap,
        });
    }
    check_base(h)?;
    let mut witnesses = Vec::new();
    let mut frontier = vec![Graph::empty(1)];
    for k in 2..=n_max {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        let mut found = BTreeSet::new();
        for base in &frontier {
            for nbrs in 1u32..1 << (k - 1) {
                let g = Graph::from_fn(k, |u, v| {
                    if v == k - 1 {
                        nbrs >> u & 1 == 1
                    } else {
                        base.has_edge(u, v)
                    }
                });
                let code = canonical_code(&g);
                if !seen.insert(code) {
                    continue;
                }
                if is_blowup_collection(&g, h).is_some() {
                    next.push(g);
                } else if (0..k).all(|drop| {
                    let rest: Vec<usize> = (0..k).filter(|&x| x != drop).collect();
                    let sub = Graph::from_adjacency(&g, &rest);
                    is_blowup_collection(&sub, h).is_some()
                }) {
                    found.insert(code);
                }
            }
        }
        witnesses.extend(found.into_iter().map(|(n, mask)| Graph::from_pair_mask(n, mask)));
        frontier = next;
    }
    Ok(witnesses)
}

/// `2h + 1`: a minimal witness has no twin vertices, so deleting one vertex
/// leaves a connected member whose neighborhood classes (at most `h` of
/// them) each hold at most two vertices.
pub fn twin_free_bound(h: &Graph) -> usize {
    2 * h.n() + 1
}

/// Largest minimal-witness size found with at most `n_max` vertices.
///
/// The search always runs up to `n_max`. The value is flagged exact when
/// `n_max` reaches the advisory bound `⌈h²/2⌉ − 1` or the twin-free bound
/// `2h + 1`, whichever is smaller.
pub fn compute_w(h: &Graph, n_max: usize) -> Result<WitnessBound> {
    let witnesses = minimal_witnesses(h, n_max)?;
    let value = witnesses.iter().map(Graph::n).max().unwrap_or(0);
    let advisory = BaseGraphProfile::new(h.clone()).w_bound();
    Ok(WitnessBound {
        value,
        exact: n_max >= advisory.min(twin_free_bound(h)),
    })
}

/// Profile of `h` with `W` filled in by [`compute_w`].
pub fn profile_with_w(h: &Graph, n_max: usize) -> Result<BaseGraphProfile> {
    Ok(BaseGraphProfile::new(h.clone()).with_w(compute_w(h, n_max)?))
}

/// Catalog text: a `# kind minimal-witness` header, then one graph block per
/// witness.
pub fn catalog_text(witnesses: &[Graph]) -> String {
    let mut out = String::from("# kind minimal-witness\n");
    for w in witnesses {
        out.push_str(&w.to_text());
    }
    out
}

pub fn parse_catalog(text: &str) -> Result<Vec<Graph>> {
    let mut blocks: Vec<String> = Vec::new();
    let mut kind = None;
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some(k) = rest.trim().strip_prefix("kind") {
                kind = Some(k.trim().to_string());
            }
            continue;
        }
        if trimmed.starts_with("graph") {
            blocks.push(String::new());
        }
        match blocks.last_mut() {
            Some(b) => {
                b.push_str(line);
                b.push('\n');
            }
            None if trimmed.is_empty() => {}
            None => return Err(Error::format(idx + 1, "expected `graph <N>` header")),
        }
    }
    if kind.as_deref() != Some("minimal-witness") {
        return Err(Error::format(1, "missing `# kind minimal-witness` header"));
    }
    blocks.iter().map(|b| Graph::parse(b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::buc_membership_bruteforce;

    fn contains_iso(list: &[Graph], g: &Graph) -> bool {
        list.iter().any(|w| canonical_code(w) == canonical_code(g))
    }

    #[test]
    fn canonical_code_is_invariant() {
        let p4 = Graph::path(4);
        let relabeled = Graph::from_edge_list(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&p4), canonical_code(&relabeled));
        assert_ne!(canonical_code(&p4), canonical_code(&Graph::star(3)));
        assert_ne!(canonical_code(&Graph::cycle(4)), canonical_code(&Graph::path(4)));
    }

    #[test]
    fn c4_witnesses() {
        let c4 = Graph::cycle(4);
        let small = minimal_witnesses(&c4, 4).unwrap();
        assert!(contains_iso(&small, &Graph::complete(3)));
        assert!(contains_iso(&small, &Graph::path(4)));
        let all = minimal_witnesses(&c4, 7).unwrap();
        assert_eq!(all.iter().map(Graph::n).max(), Some(4));
        assert_eq!(compute_w(&c4, 7).unwrap(), WitnessBound { value: 4, exact: true });
    }

    #[test]
    fn single_vertex_is_never_a_witness() {
        for h in [Graph::complete(2), Graph::cycle(5), Graph::empty(1)] {
            assert!(minimal_witnesses(&h, 1).unwrap().is_empty());
        }
    }

    #[test]
    fn k2_has_a_four_vertex_witness() {
        let k2 = Graph::complete(2);
        let w = minimal_witnesses(&k2, 7).unwrap();
        assert!(contains_iso(&w, &Graph::path(4)));
        let bound = compute_w(&k2, 7).unwrap();
        assert!(bound.value >= 4 && bound.exact);
    }

    /// C5 has a six-vertex minimal witness: a 4-cycle with pendant
    /// vertices on two adjacent corners. An induced 4-cycle in a blow-up of
    /// C5 needs its opposite corners to be twins, which the pendants break,
    /// while deleting any vertex restores a member.
    #[test]
    fn c5_has_a_six_vertex_witness() {
        let c5 = Graph::cycle(5);
        let f = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5)]).unwrap();
        assert!(buc_membership_bruteforce(&f, &c5).unwrap().is_none());
        for drop in 0..6 {
            let rest: Vec<usize> = (0..6).filter(|&x| x != drop).collect();
            let sub = f.induced_subgraph(&rest).unwrap();
            assert!(buc_membership_bruteforce(&sub, &c5).unwrap().is_some());
        }
        let listed = minimal_witnesses(&c5, 7).unwrap();
        assert!(contains_iso(&listed, &f));
        assert_eq!(compute_w(&c5, 7).unwrap(), WitnessBound { value: 6, exact: false });
    }

    #[test]
    fn witnesses_are_minimal_by_brute_force() {
        for h in [Graph::complete(2), Graph::complete(3), Graph::path(3), Graph::cycle(4)] {
            for w in minimal_witnesses(&h, 6).unwrap() {
                assert!(w.is_connected());
                assert!(buc_membership_bruteforce(&w, &h).unwrap().is_none());
                for drop in 0..w.n() {
                    let rest: Vec<usize> = (0..w.n()).filter(|&x| x != drop).collect();
                    let sub = w.induced_subgraph(&rest).unwrap();
                    assert!(buc_membership_bruteforce(&sub, &h).unwrap().is_some());
                }
                assert!(w.n() <= twin_free_bound(&h));
            }
        }
    }

    /// Exhaustive over labeled graphs: every connected non-member on at most
    /// five vertices whose one-vertex deletions are members is listed.
    #[test]
    fn enumeration_is_complete() {
        for h in [Graph::complete(2), Graph::path(3), Graph::cycle(4)] {
            let listed = minimal_witnesses(&h, 5).unwrap();
            for n in 2..=5usize {
                for mask in 0u64..1 << (n * (n - 1) / 2) {
                    let g = Graph::from_pair_mask(n, mask);
                    if !g.is_connected() || is_blowup_collection(&g, &h).is_some() {
                        continue;
                    }
                    let minimal = (0..n).all(|d| {
                        let rest: Vec<usize> = (0..n).filter(|&x| x != d).collect();
                        is_blowup_collection(&g.induced_subgraph(&rest).unwrap(), &h).is_some()
                    });
                    assert_eq!(minimal, contains_iso(&listed, &g), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn catalog_round_trip() {
        let w = minimal_witnesses(&Graph::cycle(4), 5).unwrap();
        let text = catalog_text(&w);
        assert!(text.starts_with("# kind minimal-witness"));
        assert_eq!(parse_catalog(&text).unwrap(), w);
        assert!(parse_catalog("graph 2\n0 1\n").is_err());
    }

    #[test]
    fn capacity() {
        assert!(matches!(
            minimal_witnesses(&Graph::cycle(4), 8),
            Err(Error::Capacity { .. })
        ));
    }
}
